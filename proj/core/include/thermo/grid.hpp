#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace thermo {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Uniform periodic grid on the d-torus together with its FFT plans and the
/// wavevector lattice of the half-complex (r2c) spectrum.
///
/// Physical arrays are row-major with the last axis fastest. Spectral arrays
/// have the same layout except that the last axis holds n_last/2 + 1 modes.
/// Fourier coefficients are normalized so that f(x) = sum_k c_k exp(i k.x).
///
/// The Nyquist index of every axis carries a zero effective wavenumber, so
/// first and second spectral derivatives form a consistent algebra
/// (div grad == laplacian exactly, curl grad == 0 exactly).
class TorusGrid {
 public:
  TorusGrid(int dim, std::vector<int> n_per_axis, std::vector<double> length_per_axis);
  ~TorusGrid();

  TorusGrid(const TorusGrid&) = delete;
  TorusGrid& operator=(const TorusGrid&) = delete;

  int dim() const noexcept { return dim_; }
  const std::vector<int>& shape() const noexcept { return n_; }
  const std::vector<double>& lengths() const noexcept { return len_; }

  std::size_t size() const noexcept { return size_; }
  std::size_t spectral_size() const noexcept { return spectral_size_; }
  /// Spectral extent per axis (last axis is halved).
  const std::vector<int>& spectral_shape() const noexcept { return spec_n_; }

  double cell_volume() const noexcept { return cell_volume_; }
  double measure() const noexcept { return measure_; }

  /// Coordinate of grid index i along an axis.
  double coordinate(int axis, int i) const noexcept { return len_[axis] * i / n_[axis]; }
  /// Unflattens a physical index into per-axis indices.
  std::array<int, 3> unflatten(std::size_t flat) const noexcept;
  /// Unflattens a spectral index into per-axis indices.
  std::array<int, 3> unflatten_spectral(std::size_t flat) const noexcept;

  /// Signed integer frequency of spectral index i on an axis; the Nyquist
  /// index maps to +n/2.
  int frequency(int axis, int i) const noexcept;
  bool is_nyquist(int axis, int i) const noexcept { return n_[axis] == 2 * i; }

  /// Effective wavenumber (2*pi/L * frequency, zero at Nyquist) of spectral
  /// mode `flat` along `axis`.
  double wavenumber(std::size_t flat, int axis) const noexcept {
    return k_[static_cast<std::size_t>(axis) * spectral_size_ + flat];
  }
  /// |k|^2 of the effective wavevector at spectral mode `flat`.
  double k_squared(std::size_t flat) const noexcept { return k2_[flat]; }
  const std::vector<double>& k_squared() const noexcept { return k2_; }

  /// True when the mode survives the 2/3 truncation rule.
  bool keeps_after_dealias(std::size_t flat) const noexcept { return dealias_keep_[flat] != 0; }
  /// Multiplicity of a half-spectrum mode in the full spectrum (1 or 2).
  double hermitian_weight(std::size_t flat) const noexcept { return weight_[flat]; }

  /// Normalized forward transform (coefficients of exp(i k.x)).
  void forward(std::span<const double> values, std::span<Complex> spectrum) const;
  /// Inverse transform; the input spectrum is left untouched.
  void inverse(std::span<const Complex> spectrum, std::span<double> values) const;

 private:
  int dim_;
  std::vector<int> n_;
  std::vector<int> spec_n_;
  std::vector<double> len_;
  std::size_t size_ = 0;
  std::size_t spectral_size_ = 0;
  double cell_volume_ = 0.0;
  double measure_ = 0.0;
  std::vector<double> k_;
  std::vector<double> k2_;
  std::vector<char> dealias_keep_;
  std::vector<double> weight_;

  struct Plans;
  std::unique_ptr<Plans> plans_;
};

using GridPtr = std::shared_ptr<const TorusGrid>;

/// Builds a grid, validating d in {2,3}, even n >= 4 and positive lengths.
/// An empty length list means 2*pi on every axis.
GridPtr make_grid(int dim, const std::vector<int>& n_per_axis,
                  const std::vector<double>& length_per_axis = {});

/// Convenience: n points and period 2*pi on every axis.
GridPtr make_uniform_grid(int dim, int n, double length = kTwoPi);

bool same_grid(const TorusGrid& a, const TorusGrid& b) noexcept;

}  // namespace thermo
