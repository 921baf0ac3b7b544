#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "thermo/model.hpp"

namespace thermo {

/// Low-mode Galerkin truncation of the system: every field is a finite
/// Fourier series over the cube of integer frequencies |m_a| <= n, and
/// nonlinear products are exact convolutions truncated to the cube.
///
/// Coefficients are stored for every cube mode (both k and -k) so the
/// conjugate symmetry c(-k) = conj(c(k)) is explicit. Mode flat indices are
/// lexicographic in (m_0 + n, .., m_{d-1} + n), which makes the flat index
/// of -k equal to mode_count() - 1 - flat(k).
struct GalerkinSystem {
  int dim = 2;
  int n = 0;
  std::vector<double> lengths;
  double t = 0.0;

  std::vector<std::array<int, 3>> modes;
  /// Physical wavevector 2 pi m / L per mode and axis.
  std::vector<std::array<double, 3>> wavevectors;
  /// |k|^2 per mode, the eigenvalues of -lap.
  std::vector<double> eigenvalues;

  std::vector<std::vector<Complex>> u;
  std::vector<std::vector<Complex>> v;
  std::vector<Complex> theta;

  /// Constant added to the zero mode of theta so that the truncated initial
  /// temperature is strictly positive.
  double regularization = 0.0;
  /// Relative L2 content of the initial data outside the cube.
  double projection_loss = 0.0;

  std::size_t mode_count() const noexcept { return modes.size(); }
  std::size_t flat_index(const std::array<int, 3>& m) const noexcept;
  std::size_t mirror(std::size_t flat) const noexcept { return modes.size() - 1 - flat; }
  double measure() const noexcept;

  /// Largest |c(-k) - conj(c(k))| over all stored coefficients.
  double symmetry_defect() const;
  /// Replaces every pair by its conjugate-symmetric average.
  void symmetrize();
};

/// Empty system on the cube |m_a| <= n with all coefficients zero.
GalerkinSystem make_galerkin_system(int dim, int n, std::vector<double> lengths);

/// Exact Fourier projection of a solver state onto the cube. Nyquist
/// coefficients of the grid spectrum are split evenly between +N/2 and -N/2.
/// The truncated temperature is shifted by max(0, 1e-6 - min theta_n) where
/// the minimum is taken on the 4x oversampled grid. Lossy projection and an
/// increase of the Fisher information are logged as warnings.
GalerkinSystem build_galerkin(const SimState& s0, const ModelParams& p, int n);

/// Cube coefficients of a grid field using the same Nyquist splitting as
/// build_galerkin. When `outside` is given it receives int f^2 minus the
/// L2 content captured by the cube (clamped at 0).
std::vector<Complex> project_to_cube(const GalerkinSystem& layout, const ScalarField& f, double* outside = nullptr);

/// Stacked tendencies in the same layout as the system.
struct GalerkinTendencies {
  std::vector<std::vector<Complex>> du;
  std::vector<std::vector<Complex>> dv;
  std::vector<Complex> dtheta;
};

/// du = v,  dv = -A u - mu i k theta,  dtheta = -|k|^2 theta - mu conv(theta, i k . v)
/// with conv the convolution truncated to the cube.
GalerkinTendencies galerkin_rhs(const GalerkinSystem& g, const ModelParams& p);

/// Truncated convolution c(k) = sum_{p, k - p in cube} a(p) b(k - p).
std::vector<Complex> truncated_convolution(const GalerkinSystem& g, std::span<const Complex> a,
                                           std::span<const Complex> b);

/// Reconstruction of a coefficient set on a uniform grid with `per_axis`
/// points per axis by direct summation (row-major, last axis fastest).
std::vector<double> reconstruct(const GalerkinSystem& g, std::span<const Complex> coeffs, int per_axis);
/// 4 (2n + 1), the oversampled grid used for positivity and entropy.
int oversampled_points(const GalerkinSystem& g) noexcept;

double galerkin_energy(const GalerkinSystem& g, const ModelParams& p);
/// int log theta_n by the trapezoidal rule on the oversampled grid.
double galerkin_entropy(const GalerkinSystem& g);
double galerkin_theta_min(const GalerkinSystem& g);

struct IntegratorOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  /// Initial step; 0 selects one automatically.
  double initial_step = 0.0;
  std::size_t max_steps = 10'000'000;
};

struct GalerkinTrajectory {
  std::vector<double> times;
  std::vector<GalerkinSystem> states;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
};

/// Dormand-Prince 5(4) with standard step-size control on the stacked
/// real coefficient vector. Steps are shortened to land exactly on every
/// sample time, so samples carry full integrator accuracy. Positivity of the
/// reconstructed temperature is checked after every accepted step.
/// Throws PositivityLoss or StepSizeUnderflow.
GalerkinTrajectory integrate_galerkin(const GalerkinSystem& g, const ModelParams& p,
                                      std::span<const double> sample_times, const IntegratorOptions& opts = {});
/// Samples only at t_end (plus the initial state).
GalerkinTrajectory integrate_galerkin(const GalerkinSystem& g, const ModelParams& p, double t_end, double rtol,
                                      double atol);

struct OracleSample {
  double t = 0.0;
  double u_distance = 0.0;
  double v_distance = 0.0;
  double theta_distance = 0.0;
  double max() const noexcept;
};

struct OracleComparison {
  std::vector<OracleSample> samples;
  double max_u = 0.0;
  double max_v = 0.0;
  double max_theta = 0.0;
  double tolerance = 0.0;
  double max_distance() const noexcept;
  bool pass() const noexcept { return max_distance() <= tolerance; }
};

/// Absolute L2 distance between a solver state and a Galerkin state,
/// computed in coefficient space over the union of both mode sets.
OracleSample state_distance(const GalerkinSystem& g, const SimState& s);

/// Per-sample distances of two trajectories sampled at the same times.
/// Throws InvalidArgument on incompatible sampling or tori.
OracleComparison compare_oracle(const GalerkinTrajectory& oracle, std::span<const SimState> spectral,
                                double tolerance);

}  // namespace thermo
