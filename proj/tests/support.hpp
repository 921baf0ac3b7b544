#pragma once

// Shared helpers for the test executables: random band-limited fields,
// randomized configs, records and snapshots, and comparisons.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <cstdint>
#include <random>
#include <vector>

#include "thermo/config.hpp"
#include "thermo/diagnostics.hpp"
#include "thermo/field.hpp"
#include "thermo/io.hpp"
#include "thermo/norms.hpp"

namespace thermo::testing {

/// Sum of random cosines and sines over integer frequencies |m|_inf <= band.
/// The zero mode is skipped when zero_mean is set.
inline ScalarField random_field(const GridPtr& grid, std::mt19937_64& rng, int band = 4, bool zero_mean = false,
                                double amplitude = 1.0) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const int d = grid->dim();
  struct Mode {
    std::array<double, 3> k;
    double a, b;
  };
  std::vector<Mode> modes;
  const int m3 = d == 3 ? band : 0;
  for (int i = -band; i <= band; ++i) {
    for (int j = -band; j <= band; ++j) {
      for (int l = -m3; l <= m3; ++l) {
        if (zero_mean && i == 0 && j == 0 && l == 0) continue;
        const std::array<int, 3> m{i, j, l};
        Mode mode{};
        for (int a = 0; a < d; ++a) mode.k[a] = kTwoPi / grid->lengths()[a] * m[a];
        const double decay = 1.0 / (1.0 + i * i + j * j + l * l);
        mode.a = amplitude * decay * normal(rng);
        mode.b = amplitude * decay * normal(rng);
        modes.push_back(mode);
      }
    }
  }
  return ScalarField::from_function(grid, [&](const std::array<double, 3>& x) {
    double s = 0.0;
    for (const auto& m : modes) {
      const double phase = m.k[0] * x[0] + m.k[1] * x[1] + m.k[2] * x[2];
      s += m.a * std::cos(phase) + m.b * std::sin(phase);
    }
    return s;
  });
}

inline VectorField random_vector_field(const GridPtr& grid, std::mt19937_64& rng, int band = 4) {
  std::vector<ScalarField> comps;
  for (int c = 0; c < grid->dim(); ++c) comps.push_back(random_field(grid, rng, band));
  return VectorField(std::move(comps));
}

inline double max_abs(const ScalarField& f) {
  double m = 0.0;
  for (double x : f.values()) m = std::max(m, std::fabs(x));
  return m;
}

inline double max_abs(const VectorField& v) {
  double m = 0.0;
  for (const auto& c : v.components()) m = std::max(m, max_abs(c));
  return m;
}

inline double max_diff(const ScalarField& a, const ScalarField& b) { return max_abs(a - b); }
inline double max_diff(const VectorField& a, const VectorField& b) { return max_abs(a - b); }

/// Sup-norm difference relative to max(1, |b|_inf).
inline double rel_diff(const ScalarField& a, const ScalarField& b) {
  return max_diff(a, b) / std::max(1.0, max_abs(b));
}
inline double rel_diff(const VectorField& a, const VectorField& b) {
  return max_diff(a, b) / std::max(1.0, max_abs(b));
}

/// Any finite double, drawn uniformly over bit patterns (subnormals included).
inline double random_finite_double(std::mt19937_64& rng) {
  while (true) {
    const double x = std::bit_cast<double>(rng());
    if (std::isfinite(x)) return x;
  }
}

inline bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

/// A valid RunConfig with every key drawn at random.
inline RunConfig random_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> coin(0, 1);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  RunConfig c;
  const auto& names = scenario_names();
  c.scenario.name = names[static_cast<std::size_t>(pick(0, static_cast<int>(names.size()) - 1))];
  if (coin(rng)) c.scenario.name = "lame-" + c.scenario.name;
  c.scenario.operator_kind = coin(rng) ? OperatorKind::Lame : OperatorKind::Laplacian;
  c.scenario.d = pick(2, 3);
  c.scenario.n = 2 * pick(2, 64);
  c.scenario.length = 0.1 + 20.0 * unit(rng);
  if (c.scenario.base_name() == "large") {
    c.scenario.epsilon = 1.0 + 4.0 * unit(rng);
  } else {
    c.scenario.epsilon = unit(rng);
  }
  c.scenario.theta_baseline = c.scenario.epsilon + 0.01 + 3.0 * unit(rng);
  c.scenario.seed = rng();
  c.mu = 1e-3 + 10.0 * unit(rng);
  c.lame.zeta = 1e-2 + 5.0 * unit(rng);
  const double lambda_min = -2.0 * c.lame.zeta / c.scenario.d;
  c.lame.lambda = lambda_min * 0.99 + (3.0 - lambda_min) * unit(rng);
  c.stepper.dt = std::pow(10.0, -5.0 + 4.0 * unit(rng));
  c.stepper.t_end = 100.0 * unit(rng);
  c.stepper.positivity_floor = std::pow(10.0, -12.0 + 11.0 * unit(rng));
  c.stepper.record_every = pick(1, 1000);
  c.stepper.dealias = coin(rng);
  c.stepper.clamp_theta = coin(rng);
  static const std::string chars = "abcdefghijklmnopqrstuvwxyz0123456789_-./";
  const int len = pick(0, 12);
  for (int i = 0; i < len; ++i) c.output_dir += chars[static_cast<std::size_t>(pick(0, static_cast<int>(chars.size()) - 1))];
  c.deterministic = coin(rng);
  c.identity_residual = coin(rng);
  c.dt_micro = coin(rng) ? 0.0 : std::pow(10.0, -7.0 + 4.0 * unit(rng));
  c.oracle.n = pick(0, 6);
  c.oracle.rtol = std::pow(10.0, -14.0 + 10.0 * unit(rng));
  c.oracle.atol = std::pow(10.0, -16.0 + 10.0 * unit(rng));
  c.oracle.tolerance = unit(rng) * 1e-3;
  return c;
}

inline std::vector<DiagnosticsRecord> random_records(std::mt19937_64& rng, std::size_t count) {
  std::vector<DiagnosticsRecord> out(count);
  for (auto& r : out) {
    std::array<double, DiagnosticsRecord::kFieldCount> a{};
    for (auto& x : a) x = random_finite_double(rng);
    r = DiagnosticsRecord::from_array(a);
  }
  return out;
}

inline bool same_bits(const DiagnosticsRecord& a, const DiagnosticsRecord& b) {
  const auto x = a.as_array();
  const auto y = b.as_array();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!same_bits(x[i], y[i])) return false;
  }
  return true;
}

inline Snapshot random_snapshot(std::mt19937_64& rng) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  Snapshot s;
  s.dim = pick(2, 3);
  std::size_t points = 1;
  for (int a = 0; a < s.dim; ++a) {
    s.shape.push_back(2 * pick(2, s.dim == 2 ? 16 : 6));
    s.lengths.push_back(std::fabs(random_finite_double(rng)) + 1e-300);
    points *= static_cast<std::size_t>(s.shape.back());
  }
  s.t = random_finite_double(rng);
  s.vector = pick(0, 1) == 1;
  s.components.resize(s.vector ? static_cast<std::size_t>(s.dim) : 1);
  for (auto& c : s.components) {
    c.resize(points);
    for (auto& x : c) x = random_finite_double(rng);
  }
  return s;
}

inline bool same_bits(const Snapshot& a, const Snapshot& b) {
  if (a.dim != b.dim || a.shape != b.shape || a.vector != b.vector || !same_bits(a.t, b.t)) return false;
  if (a.lengths.size() != b.lengths.size() || a.components.size() != b.components.size()) return false;
  for (std::size_t i = 0; i < a.lengths.size(); ++i) {
    if (!same_bits(a.lengths[i], b.lengths[i])) return false;
  }
  for (std::size_t c = 0; c < a.components.size(); ++c) {
    const auto& x = a.components[c];
    const auto& y = b.components[c];
    if (x.size() != y.size() || std::memcmp(x.data(), y.data(), x.size() * sizeof(double)) != 0) return false;
  }
  return true;
}

}  // namespace thermo::testing
