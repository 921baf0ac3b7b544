#include <cmath>

#include "catch_amalgamated.hpp"
#include "support.hpp"
#include "thermo/diagnostics.hpp"
#include "thermo/error.hpp"
#include "thermo/helmholtz.hpp"
#include "thermo/operators.hpp"
#include "thermo/scenarios.hpp"

using namespace thermo;
using thermo::testing::max_abs;
using thermo::testing::max_diff;

namespace {

ScenarioSpec named(const std::string& name, double eps = 1e-2) {
  ScenarioSpec s;
  s.name = name;
  s.epsilon = eps;
  return s;
}

}  // namespace

TEST_CASE("equilibrium scenario", "[scenarios]") {
  auto spec = named("equilibrium");
  spec.theta_baseline = 1.5;
  const auto data = make_scenario(spec, ModelParams::laplacian(1.0));
  CHECK(data.smallness == 0.0);
  CHECK(fisher_functional(data.state, ModelParams::laplacian(1.0)) == 0.0);
  CHECK(max_abs(data.state.u) == 0.0);
  CHECK(min_value(data.state.theta) == 1.5);
  CHECK(data.state.t == 0.0);
}

TEST_CASE("pure sectors", "[scenarios]") {
  const auto cf = make_initial_data(named("small-curl-free"));
  CHECK(max_abs(std::get<ScalarField>(curl(cf.u))) < 1e-14);
  CHECK(max_abs(cf.v) == 0.0);
  CHECK(max_value(cf.theta) == Catch::Approx(1.01));

  const auto df = make_initial_data(named("small-div-free"));
  CHECK(max_abs(divergence(df.u)) < 1e-14);
  CHECK(max_diff(df.theta, ScalarField(df.grid_ptr(), 1.0)) == 0.0);
  CHECK(decomposition_report(df, df, ModelParams::laplacian(1.0)).chi_h1 < 1e-14);

  const auto mixed = make_initial_data(named("mixed"));
  const auto parts = helmholtz_project(mixed.u);
  CHECK(max_abs(parts.div_free) == Catch::Approx(0.01).epsilon(1e-6));
  CHECK(max_abs(parts.curl_free) > 0.0);
  CHECK(max_abs(mixed.v) == Catch::Approx(0.005).epsilon(1e-6));
}

TEST_CASE("scenario dimensions and lengths", "[scenarios]") {
  auto spec = named("mixed");
  spec.d = 3;
  spec.n = 8;
  const auto s = make_initial_data(spec);
  CHECK(s.grid().dim() == 3);
  CHECK(max_abs(s.u[2]) == 0.0);

  spec = named("small-curl-free");
  spec.length = 2 * kTwoPi;
  const auto wide = make_initial_data(spec);
  CHECK(wide.grid().measure() == Catch::Approx(4 * kTwoPi * kTwoPi));
  // theta = 1 + eps cos(x1 / 2): one period across the box
  CHECK(wide.theta[0] == Catch::Approx(1.01));
  CHECK(wide.theta[static_cast<std::size_t>(wide.grid().shape()[1] * 16)] == Catch::Approx(0.99));
}

TEST_CASE("random scenario", "[scenarios]") {
  auto spec = named("random", 0.05);
  spec.seed = 42;
  const auto a = make_initial_data(spec);
  const auto b = make_initial_data(spec);
  CHECK(max_diff(a.theta, b.theta) == 0.0);
  CHECK(max_diff(a.u, b.u) == 0.0);
  spec.seed = 43;
  const auto c = make_initial_data(spec);
  CHECK(max_diff(a.theta, c.theta) > 0.0);
  CHECK(max_abs(a.theta - ScalarField(a.grid_ptr(), 1.0)) == Catch::Approx(0.05));
  for (int k = 0; k < 2; ++k) CHECK(max_abs(a.u[k]) <= 0.05 * (1 + 1e-12));
  CHECK(min_value(a.theta) > 0.0);
}

TEST_CASE("lame prefix and smallness", "[scenarios]") {
  auto spec = named("lame-mixed");
  CHECK(spec.base_name() == "mixed");
  CHECK(spec.effective_operator() == OperatorKind::Lame);
  CHECK(named("mixed").effective_operator() == OperatorKind::Laplacian);

  const auto p = ModelParams::laplacian(1.0);
  const double s1 = make_scenario(named("mixed", 0.01), p).smallness;
  const double s2 = make_scenario(named("mixed", 0.02), p).smallness;
  CHECK(s1 > 0.0);
  CHECK(s2 / s1 == Catch::Approx(4.0).epsilon(2e-2));
  const auto d = make_scenario(named("mixed"), p);
  CHECK(d.smallness == Catch::Approx(2.0 * fisher_functional(d.state, p)));
}

TEST_CASE("invalid scenarios", "[scenarios]") {
  CHECK_THROWS_AS(make_initial_data(named("nope")), InvalidArgument);
  CHECK_THROWS_AS(make_initial_data(named("large", 0.5)), InvalidArgument);
  auto big = named("large", 1.5);
  CHECK_THROWS_AS(make_initial_data(big), InvalidArgument);
  big.theta_baseline = 2.0;
  CHECK_NOTHROW(make_initial_data(big));
  CHECK_THROWS_AS(make_initial_data(named("mixed", 1.0)), InvalidArgument);
  CHECK_NOTHROW(make_initial_data(named("small-div-free", 3.0)));
  auto odd = named("mixed");
  odd.n = 15;
  CHECK_THROWS_AS(make_initial_data(odd), InvalidArgument);
  auto neg = named("mixed", -0.1);
  CHECK_THROWS_AS(make_initial_data(neg), InvalidArgument);
}
