#include <cmath>
#include <random>
#include <vector>

#include "catch_amalgamated.hpp"
#include "support.hpp"
#include "thermo/helmholtz.hpp"
#include "thermo/norms.hpp"
#include "thermo/operators.hpp"
#include "thermo/reduction.hpp"

using namespace thermo;
using thermo::testing::max_abs;
using thermo::testing::random_field;
using thermo::testing::random_vector_field;
using thermo::testing::rel_diff;

namespace {

double curl_size(const VectorField& v) {
  const auto c = curl(v);
  if (const auto* s = std::get_if<ScalarField>(&c)) return max_abs(*s);
  return max_abs(std::get<VectorField>(c));
}

}  // namespace

TEST_CASE("helmholtz on pure sectors", "[helmholtz]") {
  auto g = make_uniform_grid(2, 32);
  const auto grad = gradient(
      ScalarField::from_function(g, [](const std::array<double, 3>& x) { return std::sin(x[0] + x[1]); }));
  auto parts = helmholtz_project(grad);
  CHECK(max_abs(parts.div_free) < 1e-12);
  CHECK(rel_diff(parts.curl_free, grad) < 1e-12);

  const auto rot = VectorField::from_function(g, [](const std::array<double, 3>& x) {
    return std::array<double, 3>{-std::sin(x[1]), std::sin(x[0]), 0.0};
  });
  parts = helmholtz_project(rot);
  CHECK(rel_diff(parts.div_free, rot) < 1e-12);
  CHECK(max_abs(parts.curl_free) < 1e-12);

  const VectorField mean = VectorField::from_function(
      g, [](const std::array<double, 3>&) { return std::array<double, 3>{1.0, 0.0, 0.0}; });
  parts = helmholtz_project(mean);
  CHECK(rel_diff(parts.div_free, mean) < 1e-12);
  CHECK(max_abs(parts.curl_free) < 1e-12);
  CHECK(std::fabs(integrate(parts.curl_free[0])) < 1e-12);
}

TEST_CASE("helmholtz properties on random fields", "[helmholtz]") {
  std::mt19937_64 rng(21);
  for (int d : {2, 3}) {
    auto g = make_uniform_grid(d, d == 2 ? 32 : 16);
    for (int trial = 0; trial < 10; ++trial) {
      const auto v = random_vector_field(g, rng, 4);
      const auto p = helmholtz_project(v);
      const double scale = std::max(1.0, max_abs(v));
      CHECK(rel_diff(p.div_free + p.curl_free, v) < 1e-12);
      CHECK(std::fabs(inner(p.div_free, p.curl_free)) / l2_squared(v) < 1e-12);
      CHECK(max_abs(divergence(p.div_free)) / scale < 1e-12);
      CHECK(curl_size(p.curl_free) / scale < 1e-12);
      CHECK(rel_diff(helmholtz_project(p.div_free).div_free, p.div_free) < 1e-12);
      CHECK(rel_diff(helmholtz_project(p.curl_free).curl_free, p.curl_free) < 1e-12);
      CHECK(rel_diff(gradient(p.potential), p.curl_free) < 1e-12);
      CHECK(rel_diff(laplacian(p.potential), divergence(v)) < 1e-12);
      CHECK(std::fabs(integrate(p.potential)) / g->measure() < 1e-12);
      CHECK(rel_diff(divergence_free_part(v), p.div_free) < 1e-14);
      CHECK(rel_diff(curl_free_part(v), p.curl_free) < 1e-14);
    }
  }
}

TEST_CASE("norms of analytic fields", "[norms]") {
  auto g = make_uniform_grid(2, 32);
  const double measure = kTwoPi * kTwoPi;
  const auto one = ScalarField(g, 1.0);
  const auto n1 = field_norms(one);
  CHECK(n1.l1 == Catch::Approx(measure).epsilon(1e-14));
  CHECK(n1.l2 * n1.l2 == Catch::Approx(measure).epsilon(1e-14));
  CHECK(n1.mean == Catch::Approx(1.0).epsilon(1e-14));
  CHECK(n1.h1_semi == Catch::Approx(0.0).margin(1e-14));

  const auto s = ScalarField::from_function(g, [](const std::array<double, 3>& x) { return std::sin(x[0]); });
  CHECK(l2_squared(s) == Catch::Approx(measure / 2).epsilon(1e-13));
  CHECK(spectral_l2_squared(forward(s)) == Catch::Approx(measure / 2).epsilon(1e-13));
  CHECK(spectral_h1_semi_squared(forward(s)) == Catch::Approx(measure / 2).epsilon(1e-13));
  const auto ns = field_norms(s);
  CHECK(ns.max == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(ns.min == Catch::Approx(-1.0).epsilon(1e-12));
  CHECK(ns.linf == Catch::Approx(1.0).epsilon(1e-12));
  CHECK(ns.mean == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("parseval matches the trapezoid rule", "[norms]") {
  std::mt19937_64 rng(4);
  for (int d : {2, 3}) {
    auto g = make_uniform_grid(d, d == 2 ? 32 : 16);
    const auto f = random_field(g, rng, 5);
    CHECK(spectral_l2_squared(forward(f)) == Catch::Approx(l2_squared(f)).epsilon(1e-12));
    const auto grad = gradient(f);
    CHECK(spectral_h1_semi_squared(forward(f)) == Catch::Approx(l2_squared(grad)).epsilon(1e-12));
    const auto v = random_vector_field(g, rng, 3);
    double h1 = 0.0;
    for (const auto& c : v.components()) h1 += l2_squared(gradient(c));
    CHECK(h1_semi_squared(v) == Catch::Approx(h1).epsilon(1e-12));
  }
}

TEST_CASE("poincare inequality on zero-mean fields", "[norms]") {
  std::mt19937_64 rng(8);
  auto g = make_uniform_grid(2, 32);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_field(g, rng, 6, true);
    const double grad2 = l2_squared(gradient(f));
    const double lap2 = l2_squared(laplacian(f));
    CHECK(grad2 <= lap2 * (1.0 + 1e-12));
  }
}

TEST_CASE("compensated sums", "[reduction]") {
  const std::vector<double> x{1e16, 1.0, -1e16, 1.0};
  CHECK(sum(x) == 2.0);
  const std::vector<double> a{1.0, 2.0, 3.0};
  const std::vector<double> b{4.0, -5.0, 6.0};
  CHECK(dot(a, b) == 12.0);
  CHECK(sum(std::vector<double>{}) == 0.0);
  CHECK(reduction_mode() == ReductionMode::Deterministic);
  if (!parallel_reduction_available()) {
    set_reduction_mode(ReductionMode::Parallel);
    CHECK(sum(x) == 2.0);
    set_reduction_mode(ReductionMode::Deterministic);
  }
}
