#pragma once

#include <string>
#include <utility>
#include <vector>

#include "thermo/config.hpp"
#include "thermo/diagnostics.hpp"
#include "thermo/oracle.hpp"

namespace thermo {

/// Outcome of one simulation driven by a RunConfig.
struct RunResult {
  SimState initial;
  SimState final_state;
  std::vector<DiagnosticsRecord> records;
  StepLog log;
  double smallness = 0.0;
  /// Empty on success; otherwise the PositivityLoss or NonFinite message.
  std::string failure;
  double failure_time = 0.0;
  bool completed() const noexcept { return failure.empty(); }
};

/// Builds the scenario, applies the reduction mode and runs with a Recorder.
/// Breakdown of the dynamics is reported in the result, other errors throw.
/// `observe` additionally sees every recorded state.
RunResult simulate(const RunConfig& cfg, const StateObserver& observe = {});

/// Writes <dir>/<stem>.csv and the final u, v, theta snapshots
/// (<stem>-u.tefld, <stem>-v.tefld, <stem>-theta.tefld); a no-op for an empty dir.
void write_run_artifacts(const RunResult& r, const std::string& dir, const std::string& stem);

struct OracleRun {
  GalerkinTrajectory oracle;
  std::vector<SimState> spectral;
  OracleComparison comparison;
};

/// Runs the solver with cfg, keeping every record_every-th state, integrates
/// the Galerkin system of the initial data to the same times and compares.
OracleRun run_oracle_comparison(const RunConfig& cfg);

struct Verdict {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string detail;
};

struct ExperimentReport {
  std::string name;
  RunConfig config;
  std::vector<Verdict> verdicts;
  /// Time series of the primary run.
  std::vector<DiagnosticsRecord> records;
  /// Dynamics breakdown with context; a non-empty failure fails the report.
  std::string failure;
  bool pass() const noexcept;
  /// One line per verdict.
  std::string summary() const;
};

/// attractor, asymptotics, oscillation, bounds, lame-asymptotics, oracle-xcheck.
const std::vector<std::string>& experiment_names();

/// Defaults of a named experiment before overrides.
RunConfig experiment_config(const std::string& name);

using Overrides = std::vector<std::pair<std::string, std::string>>;

/// Runs an experiment with `key = value` overrides applied on top of its
/// defaults, then writes artifacts when output_dir is set.
ExperimentReport run_experiment(const std::string& name, const Overrides& overrides = {});

/// Largest amplitude whose scenario smallness does not exceed `threshold`
/// (bisection; smallness grows with the amplitude).
double epsilon_for_smallness(const ScenarioSpec& spec, const ModelParams& p, double threshold);

struct AttractorCalibration {
  double epsilon = 0.0;
  double smallness = 0.0;
  int runs = 0;
};

/// Bisects the amplitude of cfg's scenario in [eps_lo, eps_hi] for the
/// largest value at which the F bound holds over cfg.stepper.t_end.
AttractorCalibration calibrate_attractor(const RunConfig& cfg, double eps_lo, double eps_hi, int iterations,
                                         double f_tolerance = AttractorConfig{}.f_tolerance);

}  // namespace thermo
