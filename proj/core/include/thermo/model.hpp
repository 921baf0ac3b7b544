#pragma once

#include <string>

#include "thermo/field.hpp"
#include "thermo/operators.hpp"

namespace thermo {

enum class OperatorKind { Laplacian, Lame };

std::string to_string(OperatorKind k);
OperatorKind operator_kind_from_string(const std::string& s);

/// Coupling constant and elastic operator of the thermoelastic system
///   u_tt + A u = -mu grad theta,   theta_t - lap theta = -mu theta div u_t
/// with A = -lap (Laplacian) or A = L (Lame operator).
struct ModelParams {
  double mu = 1.0;
  OperatorKind kind = OperatorKind::Laplacian;
  LameModuli lame{};

  static ModelParams laplacian(double mu) { return ModelParams{mu, OperatorKind::Laplacian, {}}; }
  static ModelParams lame_operator(double mu, double zeta, double lambda) {
    return ModelParams{mu, OperatorKind::Lame, LameModuli{zeta, lambda}};
  }

  /// Stiffness of modes along k (curl-free sector) and across k (divergence-free sector).
  double longitudinal_stiffness() const noexcept { return kind == OperatorKind::Lame ? lame.longitudinal() : 1.0; }
  double transverse_stiffness() const noexcept { return kind == OperatorKind::Lame ? lame.zeta : 1.0; }

  /// mu = 0 is accepted as the decoupled limit; negative mu and invalid Lame
  /// moduli throw InvalidArgument.
  void validate(int dim) const;
};

/// Displacement u, velocity v = u_t and temperature theta at time t.
struct SimState {
  VectorField u;
  VectorField v;
  ScalarField theta;
  double t = 0.0;

  const GridPtr& grid_ptr() const noexcept { return theta.grid_ptr(); }
  const TorusGrid& grid() const noexcept { return theta.grid(); }

  /// Checks that all fields share one grid, are finite, and theta > floor.
  void validate(double positivity_floor = 0.0) const;

  /// Spatially constant equilibrium u = v = 0, theta = theta0.
  static SimState equilibrium(GridPtr grid, double theta0 = 1.0);
};

}  // namespace thermo
