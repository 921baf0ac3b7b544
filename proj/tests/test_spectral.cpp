#include <cmath>
#include <random>

#include "catch_amalgamated.hpp"
#include "support.hpp"
#include "thermo/error.hpp"
#include "thermo/grid.hpp"
#include "thermo/operators.hpp"

using namespace thermo;
using thermo::testing::max_abs;
using thermo::testing::max_diff;
using thermo::testing::random_field;
using thermo::testing::random_vector_field;
using thermo::testing::rel_diff;

namespace {

ScalarField scalar(const GridPtr& g, double (*f)(double, double, double)) {
  return ScalarField::from_function(g, [f](const std::array<double, 3>& x) { return f(x[0], x[1], x[2]); });
}

VectorField vec2(const GridPtr& g, double (*f0)(double, double), double (*f1)(double, double)) {
  return VectorField::from_function(g, [=](const std::array<double, 3>& x) {
    return std::array<double, 3>{f0(x[0], x[1]), f1(x[0], x[1]), 0.0};
  });
}

}  // namespace

TEST_CASE("grid construction", "[grid]") {
  auto g = make_grid(2, {8, 8}, {kTwoPi, kTwoPi});
  CHECK(g->size() == 64);
  CHECK(g->spectral_size() == 8 * 5);
  CHECK(g->measure() == Catch::Approx(kTwoPi * kTwoPi));
  for (std::size_t k = 0; k < g->spectral_size(); ++k) {
    for (int a = 0; a < 2; ++a) {
      const double w = g->wavenumber(k, a);
      CHECK(w == std::round(w));
      CHECK(std::fabs(w) <= 3.0);
    }
  }
  auto g3 = make_grid(3, {4, 4, 4}, {kTwoPi, kTwoPi, kTwoPi});
  CHECK(g3->size() == 64);
  CHECK(g3->dim() == 3);

  CHECK_THROWS_AS(make_grid(2, {7, 8}, {kTwoPi, kTwoPi}), InvalidArgument);
  CHECK_THROWS_AS(make_grid(4, {8, 8, 8, 8}), InvalidArgument);
  CHECK_THROWS_AS(make_grid(2, {8, 8}, {kTwoPi, -1.0}), InvalidArgument);
  CHECK_THROWS_AS(make_grid(2, {8}), InvalidArgument);
}

TEST_CASE("nyquist and hermitian weights", "[grid]") {
  auto g = make_uniform_grid(2, 8);
  for (std::size_t k = 0; k < g->spectral_size(); ++k) {
    const auto idx = g->unflatten_spectral(k);
    const bool self_conjugate = idx[1] == 0 || g->is_nyquist(1, idx[1]);
    CHECK(g->hermitian_weight(k) == (self_conjugate ? 1.0 : 2.0));
    for (int a = 0; a < 2; ++a) {
      if (g->is_nyquist(a, idx[a])) CHECK(g->wavenumber(k, a) == 0.0);
    }
  }
}

TEST_CASE("gradient", "[operators]") {
  auto g = make_uniform_grid(2, 32);
  const auto f = scalar(g, [](double x, double, double) { return std::sin(x); });
  const auto grad = gradient(f);
  CHECK(max_diff(grad[0], scalar(g, [](double x, double, double) { return std::cos(x); })) < 1e-12);
  CHECK(max_abs(grad[1]) < 1e-12);
  CHECK(max_abs(gradient(ScalarField(g, 3.5))) < 1e-12);
}

TEST_CASE("gradient converges to centered differences at second order", "[operators]") {
  // A fixed band-limited function (resolved on both grids) sampled at N
  // and 2N; the centered-difference error must fall by ~4.
  auto f = [](const std::array<double, 3>& x) {
    return std::sin(x[0] + 2.0 * x[1]) + 0.5 * std::cos(3.0 * x[0] - x[1]) + 0.25 * std::sin(2.0 * x[0]);
  };
  double err[2];
  for (int r = 0; r < 2; ++r) {
    const int n = r == 0 ? 32 : 64;
    auto g = make_uniform_grid(2, n);
    const auto field = ScalarField::from_function(g, f);
    const auto grad = gradient(field);
    const double h = kTwoPi / n;
    double e = 0.0;
    for (std::size_t p = 0; p < g->size(); ++p) {
      const auto idx = g->unflatten(p);
      const auto at = [&](int i, int j) {
        return field[static_cast<std::size_t>(((i + n) % n) * n + (j + n) % n)];
      };
      const double fd0 = (at(idx[0] + 1, idx[1]) - at(idx[0] - 1, idx[1])) / (2 * h);
      const double fd1 = (at(idx[0], idx[1] + 1) - at(idx[0], idx[1] - 1)) / (2 * h);
      e = std::max({e, std::fabs(fd0 - grad[0][p]), std::fabs(fd1 - grad[1][p])});
    }
    err[r] = e;
  }
  CHECK(err[0] / err[1] > 3.8);
  CHECK(err[0] / err[1] < 4.2);
}

TEST_CASE("divergence and curl", "[operators]") {
  auto g = make_uniform_grid(2, 32);
  const auto v = vec2(g, [](double x, double) { return std::cos(x); }, [](double, double) { return 0.0; });
  CHECK(max_diff(divergence(v), scalar(g, [](double x, double, double) { return -std::sin(x); })) < 1e-12);

  const auto rot = vec2(g, [](double, double y) { return -std::sin(y); }, [](double x, double) { return std::sin(x); });
  CHECK(max_abs(divergence(rot)) < 1e-12);
  const auto c = std::get<ScalarField>(curl(rot));
  CHECK(max_diff(c, scalar(g, [](double x, double y, double) { return std::cos(x) + std::cos(y); })) < 1e-12);

  const auto grad = gradient(scalar(g, [](double x, double y, double) { return std::sin(x + y); }));
  CHECK(max_abs(std::get<ScalarField>(curl(grad))) < 1e-12);
}

TEST_CASE("curl in 3D", "[operators]") {
  auto g = make_uniform_grid(3, 16);
  // v = (0, 0, sin x1): curl v = (d2 v3, -d1 v3, 0) = (0, -cos x1, 0)
  const auto v = VectorField::from_function(
      g, [](const std::array<double, 3>& x) { return std::array<double, 3>{0.0, 0.0, std::sin(x[0])}; });
  const auto c = std::get<VectorField>(curl(v));
  CHECK(max_abs(c[0]) < 1e-12);
  CHECK(max_diff(c[1], scalar(g, [](double x, double, double) { return -std::cos(x); })) < 1e-12);
  CHECK(max_abs(c[2]) < 1e-12);
}

TEST_CASE("laplacian and hessian", "[operators]") {
  auto g = make_uniform_grid(2, 32);
  const auto f = scalar(g, [](double x, double, double) { return std::sin(2 * x); });
  CHECK(max_diff(laplacian(f), scalar(g, [](double x, double, double) { return -4 * std::sin(2 * x); })) < 1e-12);
  CHECK(max_abs(laplacian(ScalarField(g, 2.0))) < 1e-12);

  const auto h = hessian(scalar(g, [](double x, double y, double) { return std::sin(x) * std::sin(y); }));
  const auto diag = scalar(g, [](double x, double y, double) { return -std::sin(x) * std::sin(y); });
  const auto off = scalar(g, [](double x, double y, double) { return std::cos(x) * std::cos(y); });
  CHECK(max_diff(h(0, 0), diag) < 1e-12);
  CHECK(max_diff(h(1, 1), diag) < 1e-12);
  CHECK(max_diff(h(0, 1), off) < 1e-12);
  CHECK(max_diff(h(1, 0), off) < 1e-12);

  const auto hc = hessian(ScalarField(g, 1.0));
  CHECK(max_abs(hc.frobenius_squared()) < 1e-24);

  std::mt19937_64 rng(7);
  for (int d : {2, 3}) {
    auto gd = make_uniform_grid(d, d == 2 ? 32 : 16);
    const auto r = random_field(gd, rng, 3);
    CHECK(rel_diff(hessian(r).trace(), laplacian(r)) < 1e-12);
  }
}

TEST_CASE("single modes in 3D", "[operators]") {
  auto g = make_uniform_grid(3, 16);
  const auto f = ScalarField::from_function(
      g, [](const std::array<double, 3>& x) { return std::cos(x[0] + 2 * x[1] - 3 * x[2]); });
  const auto s = ScalarField::from_function(
      g, [](const std::array<double, 3>& x) { return -std::sin(x[0] + 2 * x[1] - 3 * x[2]); });
  const auto grad = gradient(f);
  const double k[3] = {1, 2, -3};
  for (int a = 0; a < 3; ++a) CHECK(rel_diff(grad[a], k[a] * s) < 1e-12);
  CHECK(rel_diff(laplacian(f), -14.0 * f) < 1e-12);
  const auto h = hessian(f);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) CHECK(rel_diff(h(i, j), -k[i] * k[j] * f) < 1e-12);
  }
}

TEST_CASE("vector identity lap w = -curl curl w + grad div w", "[operators]") {
  std::mt19937_64 rng(11);
  for (int d : {2, 3}) {
    auto g = make_uniform_grid(d, d == 2 ? 32 : 16);
    for (int trial = 0; trial < 10; ++trial) {
      const auto w = random_vector_field(g, rng, 3);
      const auto rhs = gradient(divergence(w)) - curl_curl(w);
      CHECK(rel_diff(laplacian(w), rhs) < 1e-12);
    }
  }
}

TEST_CASE("lame operator", "[operators]") {
  auto g = make_uniform_grid(2, 32);
  std::mt19937_64 rng(3);
  const LameModuli m{1.3, 0.4};

  // Divergence-free input sees only the transverse stiffness.
  const auto rot = vec2(g, [](double, double y) { return -std::sin(y); }, [](double x, double) { return std::sin(x); });
  CHECK(rel_diff(lame_apply(rot, m), -m.zeta * laplacian(rot)) < 1e-12);

  // Gradients see the longitudinal one.
  const auto phi = random_field(g, rng, 4);
  const auto gp = gradient(phi);
  CHECK(rel_diff(lame_apply(gp, m), -m.longitudinal() * gradient(laplacian(phi))) < 1e-12);

  // With zeta = 1: L v = -lap v - (1 + lambda) grad div v; the -lap limit is lambda -> -1.
  const auto v = random_vector_field(g, rng, 4);
  for (double lambda : {0.5, -0.5, -0.9}) {
    const LameModuli unit{1.0, lambda};
    const auto expect = -1.0 * laplacian(v) - (1.0 + lambda) * gradient(divergence(v));
    CHECK(rel_diff(lame_apply(v, unit), expect) < 1e-12);
  }

  CHECK_THROWS_AS(lame_apply(v, LameModuli{0.0, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(lame_apply(v, LameModuli{1.0, -1.0}), InvalidArgument);
  CHECK_NOTHROW(validate_lame(LameModuli{1.0, -0.6}, 3));
  CHECK_THROWS_AS(validate_lame(LameModuli{1.0, -0.7}, 3), InvalidArgument);
}

TEST_CASE("dealiasing and hermitian symmetry", "[operators]") {
  auto g = make_uniform_grid(2, 18);
  std::mt19937_64 rng(5);
  const auto f = random_field(g, rng, 8);
  auto s = forward(f);
  CHECK(hermitian_defect(s) < 1e-14);
  dealias(s);
  for (std::size_t k = 0; k < g->spectral_size(); ++k) {
    const auto idx = g->unflatten_spectral(k);
    const int m0 = g->frequency(0, idx[0]);
    const int m1 = g->frequency(1, idx[1]);
    const bool keep = 3 * std::abs(m0) <= 18 && 3 * std::abs(m1) <= 18;
    CHECK(g->keeps_after_dealias(k) == keep);
    if (!keep) CHECK(std::abs(s.coeffs[k]) == 0.0);
  }
  // Band-limited inside the kept band: unchanged.
  const auto low = random_field(g, rng, 6);
  CHECK(max_diff(dealiased(low), low) < 1e-12);
}

TEST_CASE("transform round trip", "[grid]") {
  std::mt19937_64 rng(9);
  for (int d : {2, 3}) {
    auto g = make_uniform_grid(d, 16);
    ScalarField f(g);
    std::normal_distribution<double> normal;
    for (auto& x : f.values()) x = normal(rng);
    CHECK(max_diff(inverse(forward(f)), f) < 1e-13);
  }
}
