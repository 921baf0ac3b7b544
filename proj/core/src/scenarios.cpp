#include "thermo/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "thermo/diagnostics.hpp"
#include "thermo/error.hpp"
#include "thermo/norms.hpp"

namespace thermo {

namespace {

constexpr const char* kLamePrefix = "lame-";
constexpr int kRandomBand = 4;

using Point = std::array<double, 3>;

// Random real band-limited field with sup norm `amplitude`.
ScalarField random_field(const GridPtr& grid, std::mt19937_64& rng, double amplitude, double scale) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const int d = grid->dim();
  ScalarField f(grid);
  std::vector<Point> freqs;
  for (int m0 = -kRandomBand; m0 <= kRandomBand; ++m0) {
    for (int m1 = -kRandomBand; m1 <= kRandomBand; ++m1) {
      for (int m2 = (d == 3 ? -kRandomBand : 0); m2 <= (d == 3 ? kRandomBand : 0); ++m2) {
        // One representative of each +-m pair; the zero mode is excluded.
        const std::array<int, 3> m{m0, m1, m2};
        const auto first = std::find_if(m.begin(), m.end(), [](int x) { return x != 0; });
        if (first == m.end() || *first < 0) continue;
        freqs.push_back({static_cast<double>(m0), static_cast<double>(m1), static_cast<double>(m2)});
      }
    }
  }
  for (const auto& m : freqs) {
    const double decay = 1.0 / (1.0 + m[0] * m[0] + m[1] * m[1] + m[2] * m[2]);
    const double a = normal(rng) * decay;
    const double b = normal(rng) * decay;
    for (std::size_t p = 0; p < f.size(); ++p) {
      const auto idx = grid->unflatten(p);
      double phase = 0.0;
      for (int ax = 0; ax < d; ++ax) phase += m[static_cast<std::size_t>(ax)] * scale * grid->coordinate(ax, idx[ax]);
      f[p] += a * std::cos(phase) + b * std::sin(phase);
    }
  }
  double sup = 0.0;
  for (double x : f.values()) sup = std::max(sup, std::fabs(x));
  if (sup > 0.0) f *= amplitude / sup;
  return f;
}

}  // namespace

std::string ScenarioSpec::base_name() const {
  const std::string prefix = kLamePrefix;
  return name.rfind(prefix, 0) == 0 ? name.substr(prefix.size()) : name;
}

OperatorKind ScenarioSpec::effective_operator() const {
  return base_name() != name ? OperatorKind::Lame : operator_kind;
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"equilibrium", "small-curl-free", "small-div-free",
                                              "mixed",       "large",           "random"};
  return names;
}

void ScenarioSpec::validate() const {
  const auto base = base_name();
  const auto& names = scenario_names();
  if (std::find(names.begin(), names.end(), base) == names.end()) {
    throw InvalidArgument("unknown scenario '" + name + "'");
  }
  if (d != 2 && d != 3) throw InvalidArgument("scenario dimension must be 2 or 3");
  if (n < 4 || n % 2 != 0) throw InvalidArgument("scenario grid size must be even and >= 4");
  if (!(length > 0.0) || !std::isfinite(length)) throw InvalidArgument("scenario length must be positive");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw InvalidArgument("scenario amplitude must be >= 0");
  if (!(theta_baseline > 0.0) || !std::isfinite(theta_baseline)) {
    throw InvalidArgument("temperature baseline must be > 0");
  }
  if (base == "large" && epsilon < 1.0) throw InvalidArgument("the large scenario needs amplitude >= 1");
  const bool perturbs_theta = base != "equilibrium" && base != "small-div-free";
  if (perturbs_theta && !(theta_baseline > epsilon)) {
    throw InvalidArgument("temperature baseline must exceed the amplitude");
  }
}

GridPtr scenario_grid(const ScenarioSpec& spec) {
  spec.validate();
  return make_uniform_grid(spec.d, spec.n, spec.length);
}

SimState make_initial_data(const ScenarioSpec& spec) {
  auto grid = scenario_grid(spec);
  const auto base = spec.base_name();
  const double e = spec.epsilon;
  const double b = spec.theta_baseline;
  const double q = kTwoPi / spec.length;

  SimState s = SimState::equilibrium(grid, b);
  const auto curl_free = [&](const Point& x) {
    const double c = e * q * std::cos(q * (x[0] + x[1]));
    return Point{c, c, 0.0};
  };
  const auto div_free = [&](const Point& x) { return Point{-e * std::sin(q * x[1]), e * std::sin(q * x[0]), 0.0}; };
  const auto theta_wave = [&](const Point& x) { return b + e * std::cos(q * x[0]); };

  if (base == "small-curl-free") {
    s.u = VectorField::from_function(grid, curl_free);
    s.theta = ScalarField::from_function(grid, theta_wave);
  } else if (base == "small-div-free") {
    s.u = VectorField::from_function(grid, div_free);
  } else if (base == "mixed" || base == "large") {
    s.u = VectorField::from_function(grid, [&](const Point& x) {
      const auto a = curl_free(x);
      const auto c = div_free(x);
      return Point{a[0] + c[0], a[1] + c[1], 0.0};
    });
    s.v = VectorField::from_function(
        grid, [&](const Point& x) { return Point{0.5 * e * std::sin(q * x[0]), 0.5 * e * std::cos(q * x[0]), 0.0}; });
    s.theta = ScalarField::from_function(grid, theta_wave);
  } else if (base == "random") {
    std::mt19937_64 rng(spec.seed);
    for (int a = 0; a < spec.d; ++a) s.u[a] = random_field(grid, rng, e, q);
    for (int a = 0; a < spec.d; ++a) s.v[a] = random_field(grid, rng, e, q);
    s.theta = random_field(grid, rng, e, q);
    for (auto& x : s.theta.values()) x += b;
  }

  const double tmin = min_value(s.theta);
  if (!(tmin > 0.0)) throw PositivityLoss(0.0, tmin, "initial temperature of scenario '" + spec.name + "'");
  return s;
}

ScenarioData make_scenario(const ScenarioSpec& spec, const ModelParams& p) {
  ScenarioData out{make_initial_data(spec), 0.0};
  out.smallness = galerkin_initial_smallness(out.state, p);
  return out;
}

}  // namespace thermo
