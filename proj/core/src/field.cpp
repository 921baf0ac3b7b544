#include "thermo/field.hpp"

#include <cmath>
#include <string>

#include "thermo/error.hpp"

namespace thermo {

void require_same_grid(const TorusGrid& a, const TorusGrid& b, const char* context) {
  if (!same_grid(a, b)) throw GridMismatch(std::string(context) + ": fields live on different grids");
}

ScalarField::ScalarField(GridPtr grid, double fill) : grid_(std::move(grid)) {
  if (!grid_) throw InvalidArgument("ScalarField: null grid");
  values_.assign(grid_->size(), fill);
}

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw InvalidArgument("ScalarField: null grid");
  if (values_.size() != grid_->size()) throw InvalidArgument("ScalarField: value count does not match grid");
}

ScalarField ScalarField::from_function(GridPtr grid,
                                       const std::function<double(const std::array<double, 3>&)>& f) {
  ScalarField out(grid);
  const auto& g = *grid;
  for (std::size_t p = 0; p < g.size(); ++p) {
    const auto idx = g.unflatten(p);
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int a = 0; a < g.dim(); ++a) x[a] = g.coordinate(a, idx[a]);
    out.values_[p] = f(x);
  }
  return out;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) { return axpy(1.0, o); }
ScalarField& ScalarField::operator-=(const ScalarField& o) { return axpy(-1.0, o); }

ScalarField& ScalarField::operator*=(double a) noexcept {
  for (auto& x : values_) x *= a;
  return *this;
}

ScalarField& ScalarField::axpy(double a, const ScalarField& o) {
  require_same_grid(*grid_, *o.grid_, "ScalarField::axpy");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += a * o.values_[i];
  return *this;
}

bool ScalarField::all_finite() const noexcept {
  for (double x : values_) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

VectorField::VectorField(GridPtr grid, double fill) : grid_(std::move(grid)) {
  if (!grid_) throw InvalidArgument("VectorField: null grid");
  comps_.assign(static_cast<std::size_t>(grid_->dim()), ScalarField(grid_, fill));
}

VectorField::VectorField(std::vector<ScalarField> components) : comps_(std::move(components)) {
  if (comps_.empty()) throw InvalidArgument("VectorField: no components");
  grid_ = comps_.front().grid_ptr();
  if (static_cast<int>(comps_.size()) != grid_->dim()) {
    throw InvalidArgument("VectorField: component count must equal grid dimension");
  }
  for (const auto& c : comps_) require_same_grid(*grid_, c.grid(), "VectorField");
}

VectorField VectorField::from_function(
    GridPtr grid, const std::function<std::array<double, 3>(const std::array<double, 3>&)>& f) {
  VectorField out(grid);
  const auto& g = *grid;
  for (std::size_t p = 0; p < g.size(); ++p) {
    const auto idx = g.unflatten(p);
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int a = 0; a < g.dim(); ++a) x[a] = g.coordinate(a, idx[a]);
    const auto val = f(x);
    for (int c = 0; c < g.dim(); ++c) out[c][p] = val[c];
  }
  return out;
}

VectorField& VectorField::operator+=(const VectorField& o) { return axpy(1.0, o); }
VectorField& VectorField::operator-=(const VectorField& o) { return axpy(-1.0, o); }

VectorField& VectorField::operator*=(double a) noexcept {
  for (auto& c : comps_) c *= a;
  return *this;
}

VectorField& VectorField::axpy(double a, const VectorField& o) {
  if (o.dim() != dim()) throw GridMismatch("VectorField::axpy: component count differs");
  for (std::size_t c = 0; c < comps_.size(); ++c) comps_[c].axpy(a, o.comps_[c]);
  return *this;
}

bool VectorField::all_finite() const noexcept {
  for (const auto& c : comps_) {
    if (!c.all_finite()) return false;
  }
  return true;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }
VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
VectorField operator*(double s, VectorField a) { return a *= s; }

SymmetricMatrixField::SymmetricMatrixField(GridPtr grid) : dim_(grid->dim()) {
  entries_.assign(static_cast<std::size_t>(dim_ * (dim_ + 1) / 2), ScalarField(grid));
}

std::size_t SymmetricMatrixField::index(int i, int j) const noexcept {
  if (i > j) std::swap(i, j);
  // Row-major upper triangle.
  return static_cast<std::size_t>(i * dim_ - i * (i - 1) / 2 + (j - i));
}

ScalarField SymmetricMatrixField::trace() const {
  ScalarField t((*this)(0, 0).grid_ptr());
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

ScalarField SymmetricMatrixField::frobenius_squared() const {
  ScalarField out((*this)(0, 0).grid_ptr());
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      const auto& e = (*this)(i, j);
      for (std::size_t p = 0; p < out.size(); ++p) out[p] += e[p] * e[p];
    }
  }
  return out;
}

ScalarSpectrum forward(const ScalarField& f) {
  ScalarSpectrum s{f.grid_ptr(), std::vector<Complex>(f.grid().spectral_size())};
  f.grid().forward(f.values(), s.coeffs);
  return s;
}

VectorSpectrum forward(const VectorField& v) {
  VectorSpectrum s{v.grid_ptr(), {}};
  s.comps.reserve(static_cast<std::size_t>(v.dim()));
  for (int c = 0; c < v.dim(); ++c) s.comps.push_back(forward(v[c]).coeffs);
  return s;
}

ScalarField inverse(const ScalarSpectrum& s) {
  ScalarField f(s.grid);
  s.grid->inverse(s.coeffs, f.values());
  return f;
}

VectorField inverse(const VectorSpectrum& s) {
  std::vector<ScalarField> comps;
  comps.reserve(s.comps.size());
  for (const auto& c : s.comps) comps.push_back(inverse(ScalarSpectrum{s.grid, c}));
  return VectorField(std::move(comps));
}

}  // namespace thermo
