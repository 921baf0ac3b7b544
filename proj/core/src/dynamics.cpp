#include "thermo/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "thermo/error.hpp"
#include "thermo/log.hpp"
#include "thermo/norms.hpp"

namespace thermo {

namespace {

constexpr Complex kI{0.0, 1.0};

using Modes = std::vector<Complex>;
using VecModes = std::vector<Modes>;

// Scratch space for one coupling evaluation.
struct CouplingWork {
  std::vector<double> theta_phys;
  std::vector<double> div_phys;
  std::vector<double> product;
  Modes div_hat;
  Modes product_hat;
};

// dv = -mu grad theta, dtheta = -mu P(theta div v). Reports max(theta) and
// max|div v| of the evaluated stage when requested.
void coupling_rhs(const TorusGrid& g, double mu, bool dealias, const VecModes& v, const Modes& theta, VecModes& dv,
                  Modes& dtheta, CouplingWork& w, double* max_theta = nullptr, double* max_div = nullptr) {
  const std::size_t ns = g.spectral_size();
  const std::size_t np = g.size();
  dv.resize(static_cast<std::size_t>(g.dim()));
  for (int a = 0; a < g.dim(); ++a) {
    auto& da = dv[static_cast<std::size_t>(a)];
    da.resize(ns);
    for (std::size_t s = 0; s < ns; ++s) da[s] = -mu * kI * g.wavenumber(s, a) * theta[s];
  }

  w.div_hat.assign(ns, Complex{});
  for (int a = 0; a < g.dim(); ++a) {
    const auto& va = v[static_cast<std::size_t>(a)];
    for (std::size_t s = 0; s < ns; ++s) w.div_hat[s] += kI * g.wavenumber(s, a) * va[s];
  }
  w.theta_phys.resize(np);
  w.div_phys.resize(np);
  w.product.resize(np);
  g.inverse(theta, w.theta_phys);
  g.inverse(w.div_hat, w.div_phys);
  for (std::size_t p = 0; p < np; ++p) w.product[p] = w.theta_phys[p] * w.div_phys[p];
  if (max_theta != nullptr) *max_theta = *std::max_element(w.theta_phys.begin(), w.theta_phys.end());
  if (max_div != nullptr) {
    double m = 0.0;
    for (double x : w.div_phys) m = std::max(m, std::fabs(x));
    *max_div = m;
  }
  w.product_hat.resize(ns);
  g.forward(w.product, w.product_hat);
  dtheta.resize(ns);
  for (std::size_t s = 0; s < ns; ++s) {
    dtheta[s] = (dealias && !g.keeps_after_dealias(s)) ? Complex{} : -mu * w.product_hat[s];
  }
}

void to_spectral(const TorusGrid& g, const VectorField& f, VecModes& out) {
  out.resize(static_cast<std::size_t>(g.dim()));
  for (int a = 0; a < g.dim(); ++a) {
    out[static_cast<std::size_t>(a)].resize(g.spectral_size());
    g.forward(f[a].values(), out[static_cast<std::size_t>(a)]);
  }
}

void to_physical(const TorusGrid& g, const VecModes& in, VectorField& f) {
  for (int a = 0; a < g.dim(); ++a) g.inverse(in[static_cast<std::size_t>(a)], f[a].values());
}

// Propagator pieces for x'' = -omega^2 x over time tau.
void wave_factors(double omega2, double tau, double& c, double& s, double& ws) {
  if (omega2 == 0.0) {
    c = 1.0;
    s = tau;
    ws = 0.0;
    return;
  }
  const double w = std::sqrt(omega2);
  c = std::cos(w * tau);
  s = std::sin(w * tau) / w;
  ws = w * std::sin(w * tau);
}

}  // namespace

void StepperConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("time step dt must be > 0");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw InvalidArgument("t_end must be >= 0");
  if (!(positivity_floor > 0.0)) throw InvalidArgument("positivity_floor must be > 0");
  if (record_every < 1) throw InvalidArgument("record_every must be >= 1");
}

Tendencies evaluate_rhs(const SimState& s, const ModelParams& p, bool dealias) {
  s.validate();
  const auto& g = s.grid();
  p.validate(g.dim());
  VecModes u_hat, v_hat;
  to_spectral(g, s.u, u_hat);
  to_spectral(g, s.v, v_hat);
  Modes theta_hat(g.spectral_size());
  g.forward(s.theta.values(), theta_hat);

  VecModes dv_hat;
  Modes dtheta_hat;
  CouplingWork w;
  coupling_rhs(g, p.mu, dealias, v_hat, theta_hat, dv_hat, dtheta_hat, w);

  // Elastic force -A u per mode: -(c_L k k^T + c_T (|k|^2 - k k^T)) u.
  const double cl = p.longitudinal_stiffness();
  const double ct = p.transverse_stiffness();
  const std::size_t ns = g.spectral_size();
  for (std::size_t m = 0; m < ns; ++m) {
    Complex ku{};
    for (int a = 0; a < g.dim(); ++a) ku += g.wavenumber(m, a) * u_hat[static_cast<std::size_t>(a)][m];
    for (int a = 0; a < g.dim(); ++a) {
      const Complex along = g.wavenumber(m, a) * ku;
      const Complex au = cl * along + ct * (g.k_squared(m) * u_hat[static_cast<std::size_t>(a)][m] - along);
      dv_hat[static_cast<std::size_t>(a)][m] -= au;
    }
    dtheta_hat[m] -= g.k_squared(m) * theta_hat[m];
  }

  Tendencies t{s.v, VectorField(s.grid_ptr()), ScalarField(s.grid_ptr())};
  to_physical(g, dv_hat, t.dv);
  g.inverse(dtheta_hat, t.dtheta.values());
  return t;
}

SplitStepper::SplitStepper(GridPtr grid, const ModelParams& params, double dt, bool dealias)
    : grid_(std::move(grid)), params_(params), dt_(dt), dealias_(dealias) {
  params_.validate(grid_->dim());
  if (!(dt != 0.0) || !std::isfinite(dt)) throw InvalidArgument("SplitStepper: dt must be nonzero and finite");
  const std::size_t ns = grid_->spectral_size();
  const double tau = 0.5 * dt_;
  heat_half_.resize(ns);
  cos_l_.resize(ns);
  sin_l_.resize(ns);
  wsin_l_.resize(ns);
  cos_t_.resize(ns);
  sin_t_.resize(ns);
  wsin_t_.resize(ns);
  const double cl = params_.longitudinal_stiffness();
  const double ct = params_.transverse_stiffness();
  for (std::size_t s = 0; s < ns; ++s) {
    const double k2 = grid_->k_squared(s);
    heat_half_[s] = std::exp(-k2 * tau);
    wave_factors(cl * k2, tau, cos_l_[s], sin_l_[s], wsin_l_[s]);
    wave_factors(ct * k2, tau, cos_t_[s], sin_t_[s], wsin_t_[s]);
  }
}

void SplitStepper::advance(SimState& st, const StepperConfig& cfg, StepLog* log) const {
  const auto& g = *grid_;
  require_same_grid(g, st.grid(), "SplitStepper::advance");
  const std::size_t ns = g.spectral_size();
  const int d = g.dim();
  const bool isotropic = params_.kind == OperatorKind::Laplacian;

  VecModes u, v;
  to_spectral(g, st.u, u);
  to_spectral(g, st.v, v);
  Modes theta(ns);
  g.forward(st.theta.values(), theta);

  auto heat_half = [&] {
    for (std::size_t s = 0; s < ns; ++s) theta[s] *= heat_half_[s];
  };

  auto wave_half = [&] {
    for (std::size_t s = 0; s < ns; ++s) {
      if (isotropic) {
        for (int a = 0; a < d; ++a) {
          auto& ua = u[static_cast<std::size_t>(a)][s];
          auto& va = v[static_cast<std::size_t>(a)][s];
          const Complex u0 = ua, v0 = va;
          ua = cos_l_[s] * u0 + sin_l_[s] * v0;
          va = -wsin_l_[s] * u0 + cos_l_[s] * v0;
        }
        continue;
      }
      const double k2 = g.k_squared(s);
      Complex ku{}, kv{};
      for (int a = 0; a < d; ++a) {
        ku += g.wavenumber(s, a) * u[static_cast<std::size_t>(a)][s];
        kv += g.wavenumber(s, a) * v[static_cast<std::size_t>(a)][s];
      }
      for (int a = 0; a < d; ++a) {
        auto& ua = u[static_cast<std::size_t>(a)][s];
        auto& va = v[static_cast<std::size_t>(a)][s];
        const double ka = g.wavenumber(s, a);
        const Complex ul = k2 > 0.0 ? ka * ku / k2 : Complex{};
        const Complex vl = k2 > 0.0 ? ka * kv / k2 : Complex{};
        const Complex ut = ua - ul, vt = va - vl;
        ua = cos_l_[s] * ul + sin_l_[s] * vl + cos_t_[s] * ut + sin_t_[s] * vt;
        va = -wsin_l_[s] * ul + cos_l_[s] * vl - wsin_t_[s] * ut + cos_t_[s] * vt;
      }
    }
  };

  heat_half();
  wave_half();

  // Coupling sub-flow, explicit midpoint.
  {
    CouplingWork w;
    VecModes k1_v, k2_v;
    Modes k1_t, k2_t;
    double max_theta = 0.0, max_div = 0.0;
    coupling_rhs(g, params_.mu, dealias_, v, theta, k1_v, k1_t, w, &max_theta, &max_div);

    const double bound = 0.5 / (params_.mu * max_theta * max_div + 1.0);
    if (std::fabs(dt_) > bound && log != nullptr) {
      if (log->advisory_violations == 0) {
        std::ostringstream os;
        os << "t=" << st.t << ": dt=" << std::fabs(dt_) << " exceeds advisory bound " << bound;
        log_warning(os.str());
      }
      ++log->advisory_violations;
      log->worst_advisory_bound =
          log->advisory_violations == 1 ? bound : std::min(log->worst_advisory_bound, bound);
    }

    VecModes v_mid = v;
    Modes theta_mid = theta;
    const double h2 = 0.5 * dt_;
    for (int a = 0; a < d; ++a) {
      for (std::size_t s = 0; s < ns; ++s) v_mid[static_cast<std::size_t>(a)][s] += h2 * k1_v[static_cast<std::size_t>(a)][s];
    }
    for (std::size_t s = 0; s < ns; ++s) theta_mid[s] += h2 * k1_t[s];

    coupling_rhs(g, params_.mu, dealias_, v_mid, theta_mid, k2_v, k2_t, w);
    for (int a = 0; a < d; ++a) {
      for (std::size_t s = 0; s < ns; ++s) v[static_cast<std::size_t>(a)][s] += dt_ * k2_v[static_cast<std::size_t>(a)][s];
    }
    for (std::size_t s = 0; s < ns; ++s) theta[s] += dt_ * k2_t[s];
  }

  wave_half();
  heat_half();

  to_physical(g, u, st.u);
  to_physical(g, v, st.v);
  g.inverse(theta, st.theta.values());
  st.t += dt_;

  if (!st.u.all_finite() || !st.v.all_finite() || !st.theta.all_finite()) {
    std::ostringstream os;
    os << "non-finite state at t=" << st.t;
    throw NonFinite(st.t, os.str());
  }
  const double floor = cfg.positivity_floor;
  const double tmin = min_value(st.theta);
  if (tmin <= floor) {
    if (!cfg.clamp_theta) {
      std::ostringstream os;
      os << "temperature reached the positivity floor at t=" << st.t << " (min theta = " << tmin << ")";
      throw PositivityLoss(st.t, tmin, os.str());
    }
    std::size_t count = 0;
    for (auto& x : st.theta.values()) {
      if (x <= floor) {
        x = floor;
        ++count;
      }
    }
    if (log != nullptr) log->clamps.push_back(ClampEvent{st.t, count, tmin});
  }
}

SimState step(const SimState& s, const ModelParams& p, const StepperConfig& cfg, StepLog* log) {
  s.validate(cfg.positivity_floor);
  SplitStepper stepper(s.grid_ptr(), p, cfg.dt, cfg.dealias);
  SimState out = s;
  stepper.advance(out, cfg, log);
  return out;
}

std::size_t step_count(double t_end, double dt) noexcept {
  if (!(t_end > 0.0) || !(dt > 0.0)) return 0;
  const double r = t_end / dt;
  const double n = std::ceil(r - 1e-9 * std::max(1.0, r));
  return static_cast<std::size_t>(std::max(1.0, n));
}

SimState run(const SimState& s0, const ModelParams& p, const StepperConfig& cfg, const StateObserver& observe,
             StepLog* log) {
  cfg.validate();
  s0.validate(cfg.positivity_floor);
  p.validate(s0.grid().dim());

  SimState s = s0;
  if (observe) observe(s);
  const std::size_t n = step_count(cfg.t_end, cfg.dt);
  if (n == 0) return s;

  StepLog local_log;
  StepLog& lg = log != nullptr ? *log : local_log;
  const double h = cfg.t_end / static_cast<double>(n);
  SplitStepper stepper(s.grid_ptr(), p, h, cfg.dealias);
  const auto every = static_cast<std::size_t>(cfg.record_every);
  for (std::size_t i = 1; i <= n; ++i) {
    stepper.advance(s, cfg, &lg);
    s.t = s0.t + h * static_cast<double>(i);
    if (observe && (i % every == 0 || i == n)) observe(s);
  }
  return s;
}

}  // namespace thermo
