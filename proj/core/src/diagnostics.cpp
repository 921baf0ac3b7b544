#include "thermo/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "thermo/error.hpp"
#include "thermo/helmholtz.hpp"
#include "thermo/norms.hpp"
#include "thermo/operators.hpp"
#include "thermo/reduction.hpp"

namespace thermo {

namespace {

using Modes = std::vector<Complex>;

struct SpectralState {
  const TorusGrid* g;
  std::vector<Modes> u;
  std::vector<Modes> v;
  Modes theta;
};

SpectralState spectral_state(const SimState& s) {
  const auto& g = s.grid();
  SpectralState out{&g, forward(s.u).comps, forward(s.v).comps, forward(s.theta).coeffs};
  return out;
}

Complex k_dot(const TorusGrid& g, const std::vector<Modes>& f, std::size_t m) {
  Complex acc{};
  for (int a = 0; a < g.dim(); ++a) acc += g.wavenumber(m, a) * f[static_cast<std::size_t>(a)][m];
  return acc;
}

double vec_norm2(const std::vector<Modes>& f, std::size_t m) {
  double acc = 0.0;
  for (const auto& c : f) acc += std::norm(c[m]);
  return acc;
}

// measure * sum_m weight(m) * term(m)
template <class Term>
double spectral_integral(const TorusGrid& g, Term&& term) {
  std::vector<double> terms(g.spectral_size());
  for (std::size_t m = 0; m < terms.size(); ++m) terms[m] = g.hermitian_weight(m) * term(m);
  return g.measure() * sum(terms);
}

// The state must be strictly positive before any log or division.
void require_positive(const SimState& s, const char* what) {
  const double m = min_value(s.theta);
  if (!(m > 0.0)) throw PositivityLoss(s.t, m, std::string(what) + ": temperature must be positive");
}

double fisher_information(const ScalarField& theta) {
  const auto grad = gradient(theta);
  std::vector<double> dens(theta.size());
  for (std::size_t p = 0; p < dens.size(); ++p) {
    double g2 = 0.0;
    for (int a = 0; a < grad.dim(); ++a) g2 += grad[a][p] * grad[a][p];
    dens[p] = g2 / theta[p];
  }
  return theta.grid().cell_volume() * sum(dens);
}

double elastic_energy(const SpectralState& ss, const ModelParams& p) {
  const auto& g = *ss.g;
  const double cl = p.longitudinal_stiffness();
  const double ct = p.transverse_stiffness();
  return 0.5 * spectral_integral(g, [&](std::size_t m) {
           const double kk = std::norm(k_dot(g, ss.u, m));
           return cl * kk + ct * (g.k_squared(m) * vec_norm2(ss.u, m) - kk);
         });
}

double elastic_fisher(const SpectralState& ss, const ModelParams& p) {
  const auto& g = *ss.g;
  const double cl = p.longitudinal_stiffness();
  const double ct = p.transverse_stiffness();
  return spectral_integral(g, [&](std::size_t m) {
    const double k2 = g.k_squared(m);
    const double kk = std::norm(k_dot(g, ss.u, m));
    return cl * k2 * kk + ct * (k2 * k2 * vec_norm2(ss.u, m) - k2 * kk);
  });
}

// Curl-free part of a mode vector: k (k . f) / |k|^2.
double longitudinal_norm2(const TorusGrid& g, const std::vector<Modes>& f, std::size_t m) {
  const double k2 = g.k_squared(m);
  return k2 > 0.0 ? std::norm(k_dot(g, f, m)) / k2 : 0.0;
}

}  // namespace

const std::array<std::string_view, DiagnosticsRecord::kFieldCount>& DiagnosticsRecord::field_names() {
  static const std::array<std::string_view, kFieldCount> names{
      "t",          "energy",   "entropy",  "entropy_production", "dissipation_residual",
      "fisher_F",   "fisher_identity_residual", "theta_min", "theta_max", "chi_h1",
      "chi_t_l2",   "nu_energy", "theta_l2_dist_to_infinity"};
  return names;
}

std::array<double, DiagnosticsRecord::kFieldCount> DiagnosticsRecord::as_array() const {
  return {t,         energy,    entropy, entropy_production, dissipation_residual, fisher_F, fisher_identity_residual,
          theta_min, theta_max, chi_h1,  chi_t_l2,           nu_energy,            theta_l2_dist_to_infinity};
}

DiagnosticsRecord DiagnosticsRecord::from_array(const std::array<double, kFieldCount>& a) {
  return DiagnosticsRecord{a[0], a[1], a[2], a[3], a[4], a[5], a[6], a[7], a[8], a[9], a[10], a[11], a[12]};
}

void AttractorConfig::validate() const {
  if (!(D_empirical > 0.0)) throw InvalidArgument("D_empirical must be > 0");
  if (!(f_tolerance >= 0.0)) throw InvalidArgument("F tolerance must be >= 0");
}

double total_energy(const SimState& s, const ModelParams& p) {
  const auto ss = spectral_state(s);
  const double kinetic = 0.5 * spectral_integral(*ss.g, [&](std::size_t m) { return vec_norm2(ss.v, m); });
  return kinetic + elastic_energy(ss, p) + integrate(s.theta);
}

EntropyReport entropy_and_production(const SimState& s, const ModelParams& p) {
  require_positive(s, "entropy_and_production");
  ScalarField log_theta(s.grid_ptr());
  for (std::size_t i = 0; i < log_theta.size(); ++i) log_theta[i] = std::log(s.theta[i]);
  EntropyReport r;
  r.entropy = integrate(log_theta);
  r.production = spectral_h1_semi_squared(forward(log_theta));
  r.entropy_density_mean = r.entropy + p.mu * integrate(divergence(s.u));
  return r;
}

double dissipation_functional(const SimState& s, const ModelParams& p) {
  return total_energy(s, p) - entropy_and_production(s, p).entropy;
}

std::vector<double> dissipation_residuals(std::span<const DiagnosticsRecord> records) {
  std::vector<double> out;
  if (records.empty()) return out;
  out.reserve(records.size());
  const double d0 = records.front().energy - records.front().entropy;
  const double scale = d0 != 0.0 ? std::fabs(d0) : 1.0;
  double integral = 0.0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (i > 0) {
      integral += 0.5 * (records[i].t - records[i - 1].t) *
                  (records[i].entropy_production + records[i - 1].entropy_production);
    }
    const double lhs = records[i].energy - records[i].entropy + integral;
    out.push_back(std::fabs(lhs - d0) / scale);
  }
  return out;
}

double dissipation_residual(std::span<const DiagnosticsRecord> records) {
  const auto r = dissipation_residuals(records);
  return r.empty() ? 0.0 : *std::max_element(r.begin(), r.end());
}

double fisher_functional(const SimState& s, const ModelParams& p) {
  require_positive(s, "fisher_functional");
  const auto ss = spectral_state(s);
  const auto& g = *ss.g;
  const double grad_v = spectral_integral(g, [&](std::size_t m) { return g.k_squared(m) * vec_norm2(ss.v, m); });
  return 0.5 * (grad_v + elastic_fisher(ss, p) + fisher_information(s.theta));
}

double fisher_identity_rhs(const SimState& s, const ModelParams& p) {
  require_positive(s, "fisher_identity_rhs");
  const auto& g = s.grid();
  ScalarField log_theta(s.grid_ptr());
  for (std::size_t i = 0; i < log_theta.size(); ++i) log_theta[i] = std::log(s.theta[i]);
  const auto hess = hessian(log_theta);
  const auto hess2 = hess.frobenius_squared();
  const auto grad = gradient(s.theta);
  const auto div_v = divergence(s.v);

  std::vector<double> dissip(g.size()), coupling(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    double g2 = 0.0;
    for (int a = 0; a < g.dim(); ++a) g2 += grad[a][i] * grad[a][i];
    dissip[i] = s.theta[i] * hess2[i];
    coupling[i] = g2 / s.theta[i] * div_v[i];
  }
  return -g.cell_volume() * sum(dissip) - 0.5 * p.mu * g.cell_volume() * sum(coupling);
}

double fisher_identity_residual(const SimState& s, const ModelParams& p, double dt_micro, bool dealias) {
  if (!(dt_micro > 0.0)) throw InvalidArgument("fisher_identity_residual: dt_micro must be > 0");
  const double rhs = fisher_identity_rhs(s, p);
  StepperConfig cfg;
  cfg.dt = dt_micro;
  cfg.dealias = dealias;
  SimState plus = s, minus = s;
  SplitStepper(s.grid_ptr(), p, dt_micro, dealias).advance(plus, cfg);
  SplitStepper(s.grid_ptr(), p, -dt_micro, dealias).advance(minus, cfg);
  const double dfdt = (fisher_functional(plus, p) - fisher_functional(minus, p)) / (2.0 * dt_micro);
  return std::fabs(dfdt - rhs) / (std::fabs(rhs) + 1.0);
}

double theta_infinity(const SimState& s0, const ModelParams& p) {
  const auto ss = spectral_state(s0);
  const auto& g = *ss.g;
  const double cl = p.longitudinal_stiffness();
  // For a curl-free field |div chi|^2 = |k . u|^2 per mode.
  const double chi_v = spectral_integral(g, [&](std::size_t m) { return longitudinal_norm2(g, ss.v, m); });
  const double div_chi = spectral_integral(g, [&](std::size_t m) { return std::norm(k_dot(g, ss.u, m)); });
  return (0.5 * chi_v + 0.5 * cl * div_chi + integrate(s0.theta)) / g.measure();
}

DecompositionReport decomposition_report(const SimState& s, const SimState& s0, const ModelParams& p) {
  require_same_grid(s.grid(), s0.grid(), "decomposition_report");
  const auto ss = spectral_state(s);
  const auto& g = *ss.g;
  DecompositionReport r;
  r.chi_h1 = std::sqrt(
      spectral_integral(g, [&](std::size_t m) { return (1.0 + g.k_squared(m)) * longitudinal_norm2(g, ss.u, m); }));
  r.chi_t_l2 = std::sqrt(spectral_integral(g, [&](std::size_t m) { return longitudinal_norm2(g, ss.v, m); }));
  const double ct = p.transverse_stiffness();
  r.nu_energy = 0.5 * spectral_integral(g, [&](std::size_t m) {
    const double nu_t = vec_norm2(ss.v, m) - longitudinal_norm2(g, ss.v, m);
    const double nu = vec_norm2(ss.u, m) - longitudinal_norm2(g, ss.u, m);
    return nu_t + ct * g.k_squared(m) * nu;
  });
  r.theta_infinity_pred = theta_infinity(s0, p);
  ScalarField diff = s.theta;
  for (auto& x : diff.values()) x -= r.theta_infinity_pred;
  r.theta_l2_dist = std::sqrt(l2_squared(diff));
  return r;
}

VectorField free_wave_solution(const SimState& s0, const ModelParams& p, double t) {
  const auto& g = s0.grid();
  auto hu = forward(divergence_free_part(s0.u));
  const auto hv = forward(divergence_free_part(s0.v));
  const double tau = t - s0.t;
  const double ct = p.transverse_stiffness();
  for (std::size_t m = 0; m < g.spectral_size(); ++m) {
    const double w = std::sqrt(ct * g.k_squared(m));
    const double c = std::cos(w * tau);
    const double s = w > 0.0 ? std::sin(w * tau) / w : tau;
    for (std::size_t a = 0; a < hu.comps.size(); ++a) hu.comps[a][m] = c * hu.comps[a][m] + s * hv.comps[a][m];
  }
  return inverse(hu);
}

double galerkin_initial_smallness(const SimState& s0, const ModelParams& p) { return 2.0 * fisher_functional(s0, p); }

Recorder::Recorder(const SimState& s0, const ModelParams& p, RecorderOptions opts)
    : s0_(s0), p_(p), opts_(opts) {
  s0_.validate();
  p_.validate(s0_.grid().dim());
  d0_ = dissipation_functional(s0_, p_);
  theta_inf_ = theta_infinity(s0_, p_);
}

DiagnosticsRecord Recorder::evaluate(const SimState& s) const {
  DiagnosticsRecord r;
  r.t = s.t;
  r.energy = total_energy(s, p_);
  const auto ent = entropy_and_production(s, p_);
  r.entropy = ent.entropy;
  r.entropy_production = ent.production;
  r.fisher_F = fisher_functional(s, p_);
  r.fisher_identity_residual = opts_.identity_residual
                                   ? fisher_identity_residual(s, p_, opts_.dt_micro, opts_.dealias)
                                   : std::numeric_limits<double>::quiet_NaN();
  r.theta_min = min_value(s.theta);
  r.theta_max = max_value(s.theta);
  const auto dec = decomposition_report(s, s0_, p_);
  r.chi_h1 = dec.chi_h1;
  r.chi_t_l2 = dec.chi_t_l2;
  r.nu_energy = dec.nu_energy;
  r.theta_l2_dist_to_infinity = dec.theta_l2_dist;
  return r;
}

void Recorder::record(const SimState& s) {
  DiagnosticsRecord r = evaluate(s);
  if (!records_.empty()) {
    const auto& prev = records_.back();
    production_integral_ += 0.5 * (r.t - prev.t) * (r.entropy_production + prev.entropy_production);
  }
  const double lhs = r.energy - r.entropy + production_integral_;
  r.dissipation_residual = std::fabs(lhs - d0_) / (d0_ != 0.0 ? std::fabs(d0_) : 1.0);
  records_.push_back(r);
  if (sink_) sink_(records_.back());
}

StateObserver Recorder::observer() {
  return [this](const SimState& s) { record(s); };
}

double energy_drift(std::span<const DiagnosticsRecord> records) {
  if (records.empty()) return 0.0;
  const double e0 = records.front().energy;
  const double scale = e0 != 0.0 ? std::fabs(e0) : 1.0;
  double drift = 0.0;
  for (const auto& r : records) drift = std::max(drift, std::fabs(r.energy - e0) / scale);
  return drift;
}

double min_entropy_increment(std::span<const DiagnosticsRecord> records) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < records.size(); ++i) m = std::min(m, records[i].entropy - records[i - 1].entropy);
  return m;
}

double fisher_excess(std::span<const DiagnosticsRecord> records) {
  if (records.empty()) return 0.0;
  const double f0 = records.front().fisher_F;
  double fmax = f0;
  for (const auto& r : records) fmax = std::max(fmax, r.fisher_F);
  if (f0 == 0.0) return fmax == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return fmax / f0 - 1.0;
}

bool fisher_attractor_holds(std::span<const DiagnosticsRecord> records, double tol) {
  if (records.empty()) return true;
  const double bound = records.front().fisher_F * (1.0 + tol);
  return std::all_of(records.begin(), records.end(), [&](const auto& r) { return r.fisher_F <= bound; });
}

bool temperature_bounds_hold(std::span<const DiagnosticsRecord> records, double theta0_min, double theta0_max,
                             double lower_factor, double upper_factor) {
  return std::all_of(records.begin(), records.end(), [&](const auto& r) {
    return r.theta_min >= lower_factor * theta0_min && r.theta_max <= upper_factor * theta0_max;
  });
}

}  // namespace thermo
