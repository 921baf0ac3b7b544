#include "thermo/model.hpp"

#include <cmath>
#include <sstream>

#include "thermo/error.hpp"
#include "thermo/norms.hpp"

namespace thermo {

std::string to_string(OperatorKind k) { return k == OperatorKind::Lame ? "lame" : "laplacian"; }

OperatorKind operator_kind_from_string(const std::string& s) {
  if (s == "laplacian") return OperatorKind::Laplacian;
  if (s == "lame") return OperatorKind::Lame;
  throw InvalidArgument("unknown operator kind '" + s + "' (expected laplacian or lame)");
}

void ModelParams::validate(int dim) const {
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw InvalidArgument("coupling mu must be finite and >= 0");
  if (kind == OperatorKind::Lame) validate_lame(lame, dim);
}

void SimState::validate(double positivity_floor) const {
  const auto& g = grid();
  if (u.dim() != g.dim() || v.dim() != g.dim()) throw GridMismatch("SimState: vector fields have wrong dimension");
  require_same_grid(g, u.grid(), "SimState(u)");
  require_same_grid(g, v.grid(), "SimState(v)");
  if (!u.all_finite() || !v.all_finite() || !theta.all_finite()) throw NonFinite(t, "SimState: non-finite values");
  const double m = min_value(theta);
  if (!(m > positivity_floor)) {
    std::ostringstream os;
    os << "SimState: temperature minimum " << m << " not above floor " << positivity_floor;
    throw PositivityLoss(t, m, os.str());
  }
}

SimState SimState::equilibrium(GridPtr grid, double theta0) {
  return SimState{VectorField(grid), VectorField(grid), ScalarField(grid, theta0), 0.0};
}

}  // namespace thermo
