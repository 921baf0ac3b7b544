#include "thermo/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "thermo/error.hpp"
#include "thermo/helmholtz.hpp"
#include "thermo/io.hpp"
#include "thermo/log.hpp"
#include "thermo/norms.hpp"
#include "thermo/reduction.hpp"

namespace thermo {

namespace {

constexpr double kDecayFactor = 1e-2;
constexpr double kNuEnergyTolerance = 1e-5;
constexpr double kOscillationWindow = 10.0;
constexpr double kOscillationFloor = 0.5;
constexpr double kControlFactor = 10.0;
constexpr int kControlGrid = 4;

Verdict make_verdict(std::string name, double value, double threshold, bool pass, std::string detail = {}) {
  return Verdict{std::move(name), value, threshold, pass, std::move(detail)};
}

Verdict at_most(std::string name, double value, double threshold, std::string detail = {}) {
  return make_verdict(std::move(name), value, threshold, value <= threshold, std::move(detail));
}

Verdict at_least(std::string name, double value, double threshold, std::string detail = {}) {
  return make_verdict(std::move(name), value, threshold, value >= threshold, std::move(detail));
}

double ratio(double num, double den) { return den > 0.0 ? num / den : (num > 0.0 ? INFINITY : 0.0); }

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

bool has_override(const Overrides& o, const std::string& key) {
  return std::any_of(o.begin(), o.end(), [&](const auto& kv) { return kv.first == key; });
}

void add_bounds_verdict(ExperimentReport& rep, const RunResult& r, const std::string& label) {
  if (r.records.empty()) return;
  const double lo = min_value(r.initial.theta);
  const double hi = max_value(r.initial.theta);
  double worst_min = INFINITY, worst_max = 0.0;
  for (const auto& rec : r.records) {
    worst_min = std::min(worst_min, rec.theta_min);
    worst_max = std::max(worst_max, rec.theta_max);
  }
  rep.verdicts.push_back(at_least(label + "min theta / min theta0", ratio(worst_min, lo), 0.5));
  rep.verdicts.push_back(at_most(label + "max theta / max theta0", ratio(worst_max, hi), 2.0));
}

bool record_failure(ExperimentReport& rep, const RunResult& r, const std::string& label) {
  if (r.completed()) return false;
  std::ostringstream os;
  os << label << "dynamics broke down at t=" << r.failure_time << ": " << r.failure;
  if (!rep.failure.empty()) rep.failure += "; ";
  rep.failure += os.str();
  return true;
}

void asymptotics(ExperimentReport& rep) {
  const auto r = simulate(rep.config);
  rep.records = r.records;
  if (record_failure(rep, r, "")) return;
  const auto& first = r.records.front();
  const auto& last = r.records.back();
  rep.verdicts.push_back(at_most("chi_h1(T) / chi_h1(0)", ratio(last.chi_h1, first.chi_h1), kDecayFactor));
  rep.verdicts.push_back(at_most("|theta - theta_inf|(T) / |theta - theta_inf|(0)",
                                 ratio(last.theta_l2_dist_to_infinity, first.theta_l2_dist_to_infinity),
                                 kDecayFactor));
  add_bounds_verdict(rep, r, "");
}

void attractor(ExperimentReport& rep, const Overrides& overrides) {
  const AttractorConfig ac;
  const auto p = rep.config.model_params();
  std::vector<double> amplitudes;
  if (has_override(overrides, "epsilon")) {
    amplitudes.push_back(rep.config.scenario.epsilon);
  } else {
    const double top = epsilon_for_smallness(rep.config.scenario, p, ac.D_empirical);
    amplitudes = {0.25 * top, 0.5 * top, top};
  }
  for (double eps : amplitudes) {
    RunConfig cfg = rep.config;
    cfg.scenario.epsilon = eps;
    const auto r = simulate(cfg);
    const std::string label = "eps=" + format_number(eps) + ": ";
    rep.verdicts.push_back(at_most(label + "smallness", r.smallness, ac.D_empirical));
    if (record_failure(rep, r, label)) continue;
    rep.verdicts.push_back(at_most(label + "max F / F(0) - 1", fisher_excess(r.records), ac.f_tolerance));
    if (eps == amplitudes.back()) rep.records = r.records;
  }
}

void oscillation(ExperimentReport& rep) {
  std::vector<std::pair<double, double>> nu_norms;
  const auto r = simulate(rep.config, [&](const SimState& s) {
    nu_norms.emplace_back(s.t, std::sqrt(l2_squared(divergence_free_part(s.u))));
  });
  rep.records = r.records;
  if (record_failure(rep, r, "")) return;
  const double e0 = r.records.front().nu_energy;
  double drift = 0.0;
  for (const auto& rec : r.records) drift = std::max(drift, std::fabs(rec.nu_energy - e0));
  rep.verdicts.push_back(at_most("max |nu_energy - nu_energy(0)| / nu_energy(0)", ratio(drift, e0),
                                 kNuEnergyTolerance));
  const double t_end = r.final_state.t;
  double late_max = 0.0;
  for (const auto& [t, norm] : nu_norms) {
    if (t >= t_end - kOscillationWindow - 1e-12) late_max = std::max(late_max, norm);
  }
  rep.verdicts.push_back(
      at_least("max |nu|_L2 over the final window / |nu(0)|_L2", ratio(late_max, nu_norms.front().second),
               kOscillationFloor));
}

void bounds(ExperimentReport& rep, const Overrides& overrides) {
  std::vector<std::string> names;
  if (has_override(overrides, "scenario")) {
    names.push_back(rep.config.scenario.name);
  } else {
    names = {"small-curl-free", "mixed", "random"};
  }
  for (const auto& name : names) {
    RunConfig cfg = rep.config;
    cfg.scenario.name = name;
    const auto r = simulate(cfg);
    const std::string label = name + ": ";
    if (record_failure(rep, r, label)) continue;
    add_bounds_verdict(rep, r, label);
    if (rep.records.empty()) rep.records = r.records;
  }
}

void oracle_xcheck(ExperimentReport& rep) {
  const auto main = run_oracle_comparison(rep.config);
  const double tol = rep.config.oracle.tolerance;
  rep.verdicts.push_back(at_most("sup_t L2 distance to oracle", main.comparison.max_distance(), tol));

  RunConfig control = rep.config;
  control.scenario.n = kControlGrid;
  control.stepper.dealias = false;
  try {
    const auto neg = run_oracle_comparison(control);
    rep.verdicts.push_back(at_least("negative control (N=4, no dealiasing) distance", neg.comparison.max_distance(),
                                    kControlFactor * tol, "the aliased run must miss the oracle"));
  } catch (const PositivityLoss& e) {
    rep.verdicts.push_back(make_verdict("negative control (N=4, no dealiasing) distance", INFINITY,
                                        kControlFactor * tol, true, e.what()));
  } catch (const NonFinite& e) {
    rep.verdicts.push_back(make_verdict("negative control (N=4, no dealiasing) distance", INFINITY,
                                        kControlFactor * tol, true, e.what()));
  }
}

}  // namespace

RunResult simulate(const RunConfig& cfg, const StateObserver& observe) {
  cfg.validate();
  set_reduction_mode(cfg.deterministic ? ReductionMode::Deterministic : ReductionMode::Parallel);
  const auto p = cfg.model_params();
  auto data = make_scenario(cfg.scenario, p);
  RunResult r;
  r.initial = data.state;
  r.final_state = data.state;
  r.smallness = data.smallness;
  Recorder rec(data.state, p, cfg.recorder_options());
  const StateObserver obs = [&](const SimState& s) {
    rec.record(s);
    r.final_state = s;
    if (observe) observe(s);
  };
  try {
    run(data.state, p, cfg.stepper, obs, &r.log);
  } catch (const PositivityLoss& e) {
    r.failure = e.what();
    r.failure_time = e.time();
  } catch (const NonFinite& e) {
    r.failure = e.what();
    r.failure_time = e.time();
  }
  r.records = rec.records();
  return r;
}

void write_run_artifacts(const RunResult& r, const std::string& dir, const std::string& stem) {
  if (dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "'");
  const auto base = (std::filesystem::path(dir) / stem).string();
  write_timeseries(r.records, base + ".csv");
  write_snapshot(r.final_state.u, base + "-u.tefld", r.final_state.t);
  write_snapshot(r.final_state.v, base + "-v.tefld", r.final_state.t);
  write_snapshot(r.final_state.theta, base + "-theta.tefld", r.final_state.t);
}

OracleRun run_oracle_comparison(const RunConfig& cfg) {
  cfg.validate();
  set_reduction_mode(cfg.deterministic ? ReductionMode::Deterministic : ReductionMode::Parallel);
  const auto p = cfg.model_params();
  const auto s0 = make_initial_data(cfg.scenario);
  OracleRun out;
  run(s0, p, cfg.stepper, [&](const SimState& s) { out.spectral.push_back(s); });

  const auto g0 = build_galerkin(s0, p, cfg.oracle.n);
  std::vector<double> times;
  for (std::size_t i = 1; i < out.spectral.size(); ++i) times.push_back(out.spectral[i].t);
  IntegratorOptions opts;
  opts.rtol = cfg.oracle.rtol;
  opts.atol = cfg.oracle.atol;
  out.oracle = integrate_galerkin(g0, p, times, opts);
  out.comparison = compare_oracle(out.oracle, out.spectral, cfg.oracle.tolerance);
  return out;
}

bool ExperimentReport::pass() const noexcept {
  return failure.empty() && !verdicts.empty() &&
         std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

std::string ExperimentReport::summary() const {
  std::ostringstream os;
  os.precision(6);
  for (const auto& v : verdicts) {
    os << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.name << " = " << v.value << " (threshold " << v.threshold
       << ")";
    if (!v.detail.empty()) os << " [" << v.detail << "]";
    os << '\n';
  }
  if (!failure.empty()) os << "FAIL " << name << ": " << failure << '\n';
  return os.str();
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"attractor", "asymptotics",      "oscillation",
                                              "bounds",    "lame-asymptotics", "oracle-xcheck"};
  return names;
}

RunConfig experiment_config(const std::string& name) {
  RunConfig c;
  c.scenario.d = 2;
  c.scenario.n = 32;
  c.scenario.epsilon = 1e-2;
  c.stepper.dt = 1e-3;
  if (name == "attractor") {
    c.scenario.name = "mixed";
    c.stepper.t_end = 50.0;
    c.stepper.record_every = 10;
  } else if (name == "asymptotics" || name == "lame-asymptotics") {
    c.scenario.name = name == "lame-asymptotics" ? "lame-mixed" : "mixed";
    c.lame = LameModuli{1.0, 0.5};
    c.stepper.t_end = 100.0;
    c.stepper.dt = 5e-3;
    c.stepper.record_every = 20;
  } else if (name == "oscillation") {
    c.scenario.name = "small-div-free";
    c.stepper.t_end = 50.0;
    c.stepper.record_every = 10;
  } else if (name == "bounds") {
    c.scenario.name = "mixed";
    c.stepper.t_end = 10.0;
    c.stepper.record_every = 10;
  } else if (name == "oracle-xcheck") {
    c.scenario.name = "mixed";
    c.scenario.n = 16;
    c.stepper.t_end = 1.0;
    c.stepper.record_every = 100;
  } else {
    throw InvalidArgument("unknown experiment '" + name + "'");
  }
  return c;
}

ExperimentReport run_experiment(const std::string& name, const Overrides& overrides) {
  ExperimentReport rep;
  rep.name = name;
  rep.config = experiment_config(name);
  int index = 0;
  for (const auto& [key, value] : overrides) apply_setting(rep.config, key, value, ++index);
  rep.config.validate();

  if (name == "attractor") {
    attractor(rep, overrides);
  } else if (name == "asymptotics" || name == "lame-asymptotics") {
    asymptotics(rep);
  } else if (name == "oscillation") {
    oscillation(rep);
  } else if (name == "bounds") {
    bounds(rep, overrides);
  } else if (name == "oracle-xcheck") {
    oracle_xcheck(rep);
  }

  if (!rep.config.output_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(rep.config.output_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + rep.config.output_dir + "'");
    const auto base = (std::filesystem::path(rep.config.output_dir) / name).string();
    write_timeseries(rep.records, base + ".csv");
    write_file_atomic(base + ".verdicts", rep.summary());
    write_file_atomic(base + ".cfg", serialize_config(rep.config));
  }
  return rep;
}

double epsilon_for_smallness(const ScenarioSpec& spec, const ModelParams& p, double threshold) {
  auto smallness = [&](double eps) {
    ScenarioSpec s = spec;
    s.epsilon = eps;
    return make_scenario(s, p).smallness;
  };
  double lo = 0.0;
  double hi = std::max(spec.epsilon, 1e-6);
  // The baseline bounds the admissible amplitude from above.
  const double cap = 0.999 * spec.theta_baseline;
  while (hi < cap && smallness(hi) <= threshold) hi = std::min(2.0 * hi, cap);
  if (smallness(hi) <= threshold) return hi;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (smallness(mid) <= threshold ? lo : hi) = mid;
  }
  return lo;
}

AttractorCalibration calibrate_attractor(const RunConfig& cfg, double eps_lo, double eps_hi, int iterations,
                                         double f_tolerance) {
  AttractorCalibration out;
  auto holds = [&](double eps) {
    RunConfig c = cfg;
    c.scenario.epsilon = eps;
    ++out.runs;
    const auto r = simulate(c);
    return r.completed() && fisher_excess(r.records) <= f_tolerance;
  };
  double lo = eps_lo, hi = eps_hi;
  if (!holds(lo)) throw InvalidArgument("calibrate_attractor: the bound fails at the lower amplitude");
  if (holds(hi)) {
    lo = hi;
  } else {
    for (int i = 0; i < iterations; ++i) {
      const double mid = 0.5 * (lo + hi);
      (holds(mid) ? lo : hi) = mid;
    }
  }
  RunConfig c = cfg;
  c.scenario.epsilon = lo;
  out.epsilon = lo;
  out.smallness = make_scenario(c.scenario, c.model_params()).smallness;
  return out;
}

}  // namespace thermo
