// Command-line front end: run, decompose, diagnose, compare-oracle, experiment.
//
// Exit codes: 0 verdict pass, 2 verdict fail, 1 error.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "thermo/config.hpp"
#include "thermo/diagnostics.hpp"
#include "thermo/error.hpp"
#include "thermo/experiments.hpp"
#include "thermo/helmholtz.hpp"
#include "thermo/io.hpp"
#include "thermo/norms.hpp"
#include "thermo/operators.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kError = 1;
constexpr int kFail = 2;

void print_kv(const char* key, double value) { std::printf("%-28s %.17g\n", key, value); }

int cmd_run(const std::string& path) {
  const auto cfg = thermo::load_config(path);
  const auto r = thermo::simulate(cfg);
  thermo::write_run_artifacts(r, cfg.output_dir, "run");
  print_kv("t_final", r.final_state.t);
  print_kv("records", static_cast<double>(r.records.size()));
  print_kv("smallness", r.smallness);
  if (!r.records.empty()) {
    print_kv("energy_drift", thermo::energy_drift(r.records));
    print_kv("dissipation_residual", thermo::dissipation_residual(r.records));
    print_kv("min_entropy_increment", thermo::min_entropy_increment(r.records));
    print_kv("fisher_excess", thermo::fisher_excess(r.records));
  }
  print_kv("advisory_violations", static_cast<double>(r.log.advisory_violations));
  if (!r.completed()) {
    std::printf("FAIL run: %s\n", r.failure.c_str());
    return kFail;
  }
  std::printf("PASS run\n");
  return kPass;
}

int cmd_decompose(const std::string& path, const std::string& out_prefix) {
  const auto snap = thermo::read_snapshot(path);
  if (!snap.vector) throw thermo::InvalidArgument("decompose needs a vector snapshot");
  const auto grid = snap.make_grid();
  const auto v = snap.to_vector(grid);
  const auto parts = thermo::helmholtz_project(v);
  const auto recon = parts.div_free + parts.curl_free;
  const double scale = std::max(1.0, std::sqrt(thermo::l2_squared(v)));
  const double recon_err = std::sqrt(thermo::l2_squared(recon - v)) / scale;
  const double div_err = std::sqrt(thermo::l2_squared(thermo::divergence(parts.div_free))) / scale;
  const double ortho = std::fabs(thermo::inner(parts.div_free, parts.curl_free)) / (scale * scale);
  print_kv("l2_total", std::sqrt(thermo::l2_squared(v)));
  print_kv("l2_div_free", std::sqrt(thermo::l2_squared(parts.div_free)));
  print_kv("l2_curl_free", std::sqrt(thermo::l2_squared(parts.curl_free)));
  print_kv("reconstruction_error", recon_err);
  print_kv("div_of_div_free", div_err);
  print_kv("orthogonality_defect", ortho);
  if (!out_prefix.empty()) {
    thermo::write_snapshot(parts.div_free, out_prefix + "-div-free.tefld", snap.t);
    thermo::write_snapshot(parts.curl_free, out_prefix + "-curl-free.tefld", snap.t);
    thermo::write_snapshot(parts.potential, out_prefix + "-potential.tefld", snap.t);
  }
  const bool ok = recon_err <= 1e-12 && div_err <= 1e-12 && ortho <= 1e-12;
  std::printf("%s decompose\n", ok ? "PASS" : "FAIL");
  return ok ? kPass : kFail;
}

int cmd_diagnose(const std::string& theta_path, double mu, const std::string& u_path, const std::string& v_path,
                 const std::vector<double>& lame) {
  const auto snap = thermo::read_snapshot(theta_path);
  const auto grid = snap.make_grid();
  thermo::SimState s = thermo::SimState::equilibrium(grid);
  s.theta = snap.to_scalar(grid);
  s.t = snap.t;
  if (!u_path.empty()) s.u = thermo::read_snapshot(u_path).to_vector(grid);
  if (!v_path.empty()) s.v = thermo::read_snapshot(v_path).to_vector(grid);
  auto p = thermo::ModelParams::laplacian(mu);
  if (!lame.empty()) {
    if (lame.size() != 2) throw thermo::InvalidArgument("--lame expects zeta,lambda");
    p = thermo::ModelParams::lame_operator(mu, lame[0], lame[1]);
  }
  p.validate(grid->dim());
  const double tmin = thermo::min_value(s.theta);
  print_kv("t", s.t);
  print_kv("theta_min", tmin);
  print_kv("theta_max", thermo::max_value(s.theta));
  print_kv("energy", thermo::total_energy(s, p));
  if (!(tmin > 0.0)) {
    std::printf("FAIL diagnose: temperature is not strictly positive\n");
    return kFail;
  }
  const auto ent = thermo::entropy_and_production(s, p);
  print_kv("entropy", ent.entropy);
  print_kv("entropy_production", ent.production);
  print_kv("fisher_F", thermo::fisher_functional(s, p));
  print_kv("fisher_dFdt", thermo::fisher_identity_rhs(s, p));
  print_kv("smallness", thermo::galerkin_initial_smallness(s, p));
  const auto dec = thermo::decomposition_report(s, s, p);
  print_kv("chi_h1", dec.chi_h1);
  print_kv("chi_t_l2", dec.chi_t_l2);
  print_kv("nu_energy", dec.nu_energy);
  print_kv("theta_infinity", dec.theta_infinity_pred);
  std::printf("PASS diagnose\n");
  return kPass;
}

int cmd_compare_oracle(const std::string& path) {
  const auto cfg = thermo::load_config(path);
  const auto r = thermo::run_oracle_comparison(cfg);
  std::printf("%-12s %-24s %-24s %-24s\n", "t", "u_distance", "v_distance", "theta_distance");
  for (const auto& s : r.comparison.samples) {
    std::printf("%-12.6g %-24.17g %-24.17g %-24.17g\n", s.t, s.u_distance, s.v_distance, s.theta_distance);
  }
  print_kv("max_distance", r.comparison.max_distance());
  print_kv("tolerance", r.comparison.tolerance);
  print_kv("oracle_steps", static_cast<double>(r.oracle.accepted_steps));
  const bool ok = r.comparison.pass();
  std::printf("%s compare-oracle\n", ok ? "PASS" : "FAIL");
  return ok ? kPass : kFail;
}

int cmd_experiment(const std::string& name, const std::vector<std::string>& sets) {
  thermo::Overrides overrides;
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw thermo::ConfigError(0, "--set expects key=value, got '" + kv + "'");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      const auto b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    overrides.emplace_back(trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
  }
  const auto rep = thermo::run_experiment(name, overrides);
  std::cout << rep.summary();
  std::printf("%s experiment %s\n", rep.pass() ? "PASS" : "FAIL", name.c_str());
  return rep.pass() ? kPass : kFail;
}

std::string experiment_help() {
  std::ostringstream os;
  os << "Experiments:";
  for (const auto& n : thermo::experiment_names()) os << ' ' << n;
  os << "\nOverride keys (--set key=value):";
  for (const auto& k : thermo::config_keys()) os << ' ' << k;
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral thermoelasticity simulator and verification harness"};
  app.require_subcommand(1);

  std::string run_config;
  auto* run = app.add_subcommand("run", "Run the simulation described by a config file");
  run->add_option("config", run_config, "Config file (key = value lines)")->required();

  std::string decompose_path, decompose_out;
  auto* decompose = app.add_subcommand("decompose", "Helmholtz-decompose a vector snapshot");
  decompose->add_option("snapshot", decompose_path, "TEFLD1 vector snapshot")->required();
  decompose->add_option("--out", decompose_out, "Write parts to <prefix>-div-free/-curl-free/-potential.tefld");

  std::string diag_theta, diag_u, diag_v;
  double diag_mu = 0.0;
  std::vector<double> diag_lame;
  auto* diagnose = app.add_subcommand("diagnose", "Evaluate the diagnostics of one state");
  diagnose->add_option("snapshot", diag_theta, "TEFLD1 temperature snapshot")->required();
  diagnose->add_option("--mu", diag_mu, "Coupling constant")->required();
  diagnose->add_option("--u", diag_u, "Displacement snapshot (default 0)");
  diagnose->add_option("--v", diag_v, "Velocity snapshot (default 0)");
  diagnose->add_option("--lame", diag_lame, "Lame moduli zeta,lambda")->delimiter(',')->expected(2);

  std::string oracle_config;
  auto* oracle = app.add_subcommand("compare-oracle", "Cross-check the solver against the Galerkin oracle");
  oracle->add_option("config", oracle_config, "Config file")->required();

  std::string exp_name;
  std::vector<std::string> exp_sets;
  auto* experiment = app.add_subcommand("experiment", "Run a named experiment");
  experiment->add_option("name", exp_name, "Experiment name")->required();
  experiment->add_option("--set", exp_sets, "Override key=value (repeatable)");
  experiment->footer(experiment_help());

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    if (*run) return cmd_run(run_config);
    if (*decompose) return cmd_decompose(decompose_path, decompose_out);
    if (*diagnose) return cmd_diagnose(diag_theta, diag_mu, diag_u, diag_v, diag_lame);
    if (*oracle) return cmd_compare_oracle(oracle_config);
    if (*experiment) return cmd_experiment(exp_name, exp_sets);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
