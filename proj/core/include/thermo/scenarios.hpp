#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "thermo/model.hpp"

namespace thermo {

/// Named initial data. Built-ins, with b the temperature baseline and e the
/// amplitude (x3-independent in 3D, third components zero):
///
///   equilibrium      u = v = 0, theta = b
///   small-curl-free  u = e grad sin(x1 + x2), v = 0, theta = b + e cos x1
///   small-div-free   u = e (-sin x2, sin x1), v = 0, theta = b
///   mixed            u = e (grad sin(x1 + x2) + (-sin x2, sin x1)),
///                    v = e/2 (sin x1, cos x1), theta = b + e cos x1
///   large            mixed with e >= 1
///   random           band-limited (|m|_inf <= 4) u, v, theta - b, each scaled
///                    to sup norm e; deterministic in the seed
///
/// The prefix "lame-" (e.g. "lame-mixed") selects the Lame operator.
/// Wavenumbers refer to the 2 pi torus and scale with 2 pi / length.
struct ScenarioSpec {
  std::string name = "mixed";
  int d = 2;
  int n = 32;
  double length = kTwoPi;
  double epsilon = 1e-2;
  double theta_baseline = 1.0;
  std::uint64_t seed = 0;
  OperatorKind operator_kind = OperatorKind::Laplacian;

  /// Name without a "lame-" prefix.
  std::string base_name() const;
  /// Operator implied by the name prefix and operator_kind.
  OperatorKind effective_operator() const;
  void validate() const;
  bool operator==(const ScenarioSpec&) const = default;
};

/// Base names accepted by ScenarioSpec (without the "lame-" prefix).
const std::vector<std::string>& scenario_names();

GridPtr scenario_grid(const ScenarioSpec& spec);

/// Throws InvalidArgument for an invalid spec and PositivityLoss when the
/// constructed temperature is not strictly positive.
SimState make_initial_data(const ScenarioSpec& spec);

struct ScenarioData {
  SimState state;
  /// galerkin_initial_smallness of the state under the given parameters.
  double smallness = 0.0;
};

ScenarioData make_scenario(const ScenarioSpec& spec, const ModelParams& p);

}  // namespace thermo
