#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "thermo/grid.hpp"

namespace thermo {

/// Real periodic scalar field sampled on a TorusGrid.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(GridPtr grid, double fill = 0.0);
  ScalarField(GridPtr grid, std::vector<double> values);

  /// Samples f(x) at every grid point; x has dim() live entries.
  static ScalarField from_function(GridPtr grid, const std::function<double(const std::array<double, 3>&)>& f);

  const GridPtr& grid_ptr() const noexcept { return grid_; }
  const TorusGrid& grid() const noexcept { return *grid_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }
  double& operator[](std::size_t i) noexcept { return values_[i]; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double a) noexcept;
  /// this += a * o
  ScalarField& axpy(double a, const ScalarField& o);

  bool all_finite() const noexcept;

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// d-component real periodic vector field.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(GridPtr grid, double fill = 0.0);
  explicit VectorField(std::vector<ScalarField> components);

  static VectorField from_function(GridPtr grid,
                                   const std::function<std::array<double, 3>(const std::array<double, 3>&)>& f);

  const GridPtr& grid_ptr() const noexcept { return grid_; }
  const TorusGrid& grid() const noexcept { return *grid_; }
  int dim() const noexcept { return static_cast<int>(comps_.size()); }

  ScalarField& operator[](int c) noexcept { return comps_[static_cast<std::size_t>(c)]; }
  const ScalarField& operator[](int c) const noexcept { return comps_[static_cast<std::size_t>(c)]; }
  std::vector<ScalarField>& components() noexcept { return comps_; }
  const std::vector<ScalarField>& components() const noexcept { return comps_; }

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double a) noexcept;
  VectorField& axpy(double a, const VectorField& o);

  bool all_finite() const noexcept;

 private:
  GridPtr grid_;
  std::vector<ScalarField> comps_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);
VectorField operator+(VectorField a, const VectorField& b);
VectorField operator-(VectorField a, const VectorField& b);
VectorField operator*(double s, VectorField a);

/// Symmetric d x d matrix field stored as its upper triangle.
class SymmetricMatrixField {
 public:
  explicit SymmetricMatrixField(GridPtr grid);

  int dim() const noexcept { return dim_; }
  ScalarField& operator()(int i, int j) noexcept { return entries_[index(i, j)]; }
  const ScalarField& operator()(int i, int j) const noexcept { return entries_[index(i, j)]; }
  /// Trace field.
  ScalarField trace() const;
  /// Pointwise Frobenius norm squared, sum_ij a_ij^2.
  ScalarField frobenius_squared() const;

 private:
  std::size_t index(int i, int j) const noexcept;
  int dim_;
  std::vector<ScalarField> entries_;
};

/// Half-complex spectrum of a scalar field.
struct ScalarSpectrum {
  GridPtr grid;
  std::vector<Complex> coeffs;
};

/// Per-component half-complex spectra of a vector field.
struct VectorSpectrum {
  GridPtr grid;
  std::vector<std::vector<Complex>> comps;
};

ScalarSpectrum forward(const ScalarField& f);
VectorSpectrum forward(const VectorField& v);
ScalarField inverse(const ScalarSpectrum& s);
VectorField inverse(const VectorSpectrum& s);

/// Throws GridMismatch unless both grids describe the same torus.
void require_same_grid(const TorusGrid& a, const TorusGrid& b, const char* context);

}  // namespace thermo
