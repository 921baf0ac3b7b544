#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "thermo/model.hpp"

namespace thermo {

struct StepperConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  /// Smallest admissible pointwise temperature.
  double positivity_floor = 1e-10;
  /// Observer cadence in steps.
  int record_every = 1;
  /// Apply the 2/3 rule after every pointwise product.
  bool dealias = true;
  /// Debug override: raise sub-floor temperatures to the floor instead of
  /// failing. Every clamp is recorded in the StepLog.
  bool clamp_theta = false;

  void validate() const;
};

struct ClampEvent {
  double t = 0.0;
  std::size_t points = 0;
  double theta_min_before = 0.0;
};

/// Side information collected while stepping.
struct StepLog {
  std::vector<ClampEvent> clamps;
  /// Steps whose dt exceeded dt <= 0.5 / (mu max(theta) max|div v| + 1).
  std::size_t advisory_violations = 0;
  double worst_advisory_bound = 0.0;
};

/// Tendencies of the semi-discrete system.
struct Tendencies {
  VectorField du;
  VectorField dv;
  ScalarField dtheta;
};

/// du = v, dv = -A u - mu grad theta, dtheta = lap theta - mu P(theta div v),
/// with P the 2/3 truncation when `dealias` is set.
Tendencies evaluate_rhs(const SimState& s, const ModelParams& p, bool dealias = true);

/// Strang splitting with exact per-mode linear flows:
///   heat(dt/2) wave(dt/2) coupling(dt) wave(dt/2) heat(dt/2)
/// where the coupling sub-flow (v' = -mu grad theta, theta' = -mu theta div v)
/// is advanced by the explicit midpoint rule.
///
/// Reusable across steps of equal size (per-mode propagators are cached).
class SplitStepper {
 public:
  SplitStepper(GridPtr grid, const ModelParams& params, double dt, bool dealias);

  double dt() const noexcept { return dt_; }
  /// Advances in place. Throws NonFinite or PositivityLoss (unless clamping).
  void advance(SimState& s, const StepperConfig& cfg, StepLog* log = nullptr) const;

 private:
  GridPtr grid_;
  ModelParams params_;
  double dt_;
  bool dealias_;
  std::vector<double> heat_half_;
  // Half-step wave propagators for the longitudinal and transverse sectors.
  std::vector<double> cos_l_, sin_l_, wsin_l_;
  std::vector<double> cos_t_, sin_t_, wsin_t_;
};

/// One step of size cfg.dt.
SimState step(const SimState& s, const ModelParams& p, const StepperConfig& cfg, StepLog* log = nullptr);

using StateObserver = std::function<void(const SimState&)>;

/// Steps from s0.t to s0.t + cfg.t_end with a uniform step no larger than
/// cfg.dt. The observer sees the initial state, every record_every-th state
/// and the final state. Step errors propagate; PositivityLoss and NonFinite
/// carry the failure time.
SimState run(const SimState& s0, const ModelParams& p, const StepperConfig& cfg, const StateObserver& observe = {},
             StepLog* log = nullptr);

/// Number of uniform steps run() takes to cover t_end with steps <= dt.
std::size_t step_count(double t_end, double dt) noexcept;

}  // namespace thermo
