#include "thermo/norms.hpp"

#include <algorithm>
#include <cmath>

#include "thermo/reduction.hpp"

namespace thermo {

double integrate(const ScalarField& f) { return f.grid().cell_volume() * sum(f.values()); }

double inner(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid(), "inner");
  return a.grid().cell_volume() * dot(a.values(), b.values());
}

double inner(const VectorField& a, const VectorField& b) {
  double s = 0.0;
  for (int c = 0; c < a.dim(); ++c) s += inner(a[c], b[c]);
  return s;
}

double l2_squared(const ScalarField& f) { return inner(f, f); }
double l2_squared(const VectorField& v) { return inner(v, v); }

double spectral_l2_squared(const ScalarSpectrum& s) {
  const auto& g = *s.grid;
  std::vector<double> terms(g.spectral_size());
  for (std::size_t m = 0; m < terms.size(); ++m) terms[m] = g.hermitian_weight(m) * std::norm(s.coeffs[m]);
  return g.measure() * sum(terms);
}

double spectral_h1_semi_squared(const ScalarSpectrum& s) {
  const auto& g = *s.grid;
  std::vector<double> terms(g.spectral_size());
  for (std::size_t m = 0; m < terms.size(); ++m) {
    terms[m] = g.hermitian_weight(m) * g.k_squared(m) * std::norm(s.coeffs[m]);
  }
  return g.measure() * sum(terms);
}

double h1_semi_squared(const VectorField& v) {
  double s = 0.0;
  for (int c = 0; c < v.dim(); ++c) s += spectral_h1_semi_squared(forward(v[c]));
  return s;
}

double min_value(const ScalarField& f) noexcept {
  const auto vals = f.values();
  return vals.empty() ? 0.0 : *std::min_element(vals.begin(), vals.end());
}

double max_value(const ScalarField& f) noexcept {
  const auto vals = f.values();
  return vals.empty() ? 0.0 : *std::max_element(vals.begin(), vals.end());
}

FieldNorms field_norms(const ScalarField& f) {
  FieldNorms n;
  std::vector<double> absval(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) absval[i] = std::fabs(f[i]);
  n.l2 = std::sqrt(l2_squared(f));
  n.h1_semi = std::sqrt(spectral_h1_semi_squared(forward(f)));
  n.l1 = f.grid().cell_volume() * sum(absval);
  n.linf = absval.empty() ? 0.0 : *std::max_element(absval.begin(), absval.end());
  n.min = min_value(f);
  n.max = max_value(f);
  n.mean = integrate(f) / f.grid().measure();
  return n;
}

VectorNorms field_norms(const VectorField& v) {
  VectorNorms n;
  n.l2 = std::sqrt(l2_squared(v));
  n.h1_semi = std::sqrt(h1_semi_squared(v));
  const std::size_t size = v.grid().size();
  for (std::size_t p = 0; p < size; ++p) {
    double m2 = 0.0;
    for (int c = 0; c < v.dim(); ++c) m2 += v[c][p] * v[c][p];
    n.linf = std::max(n.linf, std::sqrt(m2));
  }
  return n;
}

}  // namespace thermo
