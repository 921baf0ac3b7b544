#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "thermo/diagnostics.hpp"
#include "thermo/dynamics.hpp"
#include "thermo/model.hpp"
#include "thermo/scenarios.hpp"

namespace thermo {

struct OracleSettings {
  int n = 3;
  double rtol = 1e-10;
  double atol = 1e-12;
  /// Pass threshold on the sup-in-time L2 distance.
  double tolerance = 1e-5;
  bool operator==(const OracleSettings&) const = default;
};

/// Everything a run needs. Text form, one `key = value` per line, `#` starts
/// a comment. Keys and defaults:
///
///   d = 2                    n = 32                  length = 6.283185307179586
///   mu = 1                   operator = laplacian    zeta = 1        lambda = 0.5
///   dt = 0.001               t_end = 1               positivity_floor = 1e-10
///   record_every = 1         dealias = true          clamp_theta = false
///   scenario = mixed         epsilon = 0.01          theta_baseline = 1
///   seed = 0                 output_dir =            deterministic = true
///   identity_residual = false                        dt_micro = 0
///   oracle_n = 3             oracle_rtol = 1e-10     oracle_atol = 1e-12
///   oracle_tolerance = 1e-05
///
/// `operator` is laplacian or lame. mu must be > 0. dt_micro = 0 selects dt / 10.
struct RunConfig {
  double mu = 1.0;
  LameModuli lame{};
  StepperConfig stepper{};
  ScenarioSpec scenario{};
  std::string output_dir;
  bool deterministic = true;
  bool identity_residual = false;
  double dt_micro = 0.0;
  OracleSettings oracle{};

  ModelParams model_params() const;
  RecorderOptions recorder_options() const;
  /// Throws ConfigError (line 0) on any violated constraint.
  void validate() const;
  bool operator==(const RunConfig&) const;
};

/// Parses the text form. Unknown keys, duplicate keys, malformed values and
/// violated constraints raise ConfigError carrying the offending line.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Every key on its own line in a fixed order; parse_config inverts it.
std::string serialize_config(const RunConfig& cfg);

/// Sets one key from its text value (used for command-line overrides).
/// `line` is reported in errors.
void apply_setting(RunConfig& cfg, std::string_view key, std::string_view value, int line = 0);

/// Keys in serialization order.
const std::vector<std::string>& config_keys();

}  // namespace thermo
