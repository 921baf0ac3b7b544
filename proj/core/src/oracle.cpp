#include "thermo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "thermo/error.hpp"
#include "thermo/log.hpp"
#include "thermo/norms.hpp"
#include "thermo/reduction.hpp"

namespace thermo {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kThetaRegularization = 1e-6;

std::size_t side(const GalerkinSystem& g) { return static_cast<std::size_t>(2 * g.n + 1); }

bool in_cube(const GalerkinSystem& g, const std::array<int, 3>& m) {
  for (int a = 0; a < g.dim; ++a) {
    if (std::abs(m[static_cast<std::size_t>(a)]) > g.n) return false;
  }
  return true;
}

// out[o][j][i] = sum_m e[j][m] in[o][m][i] along `axis`.
std::vector<Complex> contract(const std::vector<Complex>& in, std::vector<std::size_t>& shape, std::size_t axis,
                              const std::vector<Complex>& e, std::size_t points) {
  std::size_t outer = 1, inner = 1;
  for (std::size_t a = 0; a < axis; ++a) outer *= shape[a];
  for (std::size_t a = axis + 1; a < shape.size(); ++a) inner *= shape[a];
  const std::size_t mid = shape[axis];
  std::vector<Complex> out(outer * points * inner);
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t j = 0; j < points; ++j) {
      Complex* dst = &out[(o * points + j) * inner];
      for (std::size_t m = 0; m < mid; ++m) {
        const Complex w = e[j * mid + m];
        const Complex* src = &in[(o * mid + m) * inner];
        for (std::size_t i = 0; i < inner; ++i) dst[i] += w * src[i];
      }
    }
  }
  shape[axis] = points;
  return out;
}

double fisher_information_on(const GalerkinSystem& g, const std::vector<Complex>& theta) {
  const int pts = oversampled_points(g);
  auto vals = reconstruct(g, theta, pts);
  std::vector<double> g2(vals.size(), 0.0);
  std::vector<Complex> d(g.mode_count());
  for (int a = 0; a < g.dim; ++a) {
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = kI * g.wavevectors[k][static_cast<std::size_t>(a)] * theta[k];
    auto da = reconstruct(g, d, pts);
    for (std::size_t i = 0; i < g2.size(); ++i) g2[i] += da[i] * da[i];
  }
  for (std::size_t i = 0; i < g2.size(); ++i) g2[i] /= vals[i];
  return g.measure() / static_cast<double>(vals.size()) * sum(g2);
}

// Stacked real layout: u (d M), v (d M), theta (M), each as (re, im).
std::size_t stacked_size(const GalerkinSystem& g) {
  return 2 * g.mode_count() * static_cast<std::size_t>(2 * g.dim + 1);
}

void pack(const std::vector<Complex>& c, std::vector<double>& y, std::size_t& off) {
  for (const auto& z : c) {
    y[off++] = z.real();
    y[off++] = z.imag();
  }
}

void unpack(std::vector<Complex>& c, const std::vector<double>& y, std::size_t& off) {
  for (auto& z : c) {
    z = Complex{y[off], y[off + 1]};
    off += 2;
  }
}

std::vector<double> to_stacked(const GalerkinSystem& g) {
  std::vector<double> y(stacked_size(g));
  std::size_t off = 0;
  for (const auto& c : g.u) pack(c, y, off);
  for (const auto& c : g.v) pack(c, y, off);
  pack(g.theta, y, off);
  return y;
}

void from_stacked(GalerkinSystem& g, const std::vector<double>& y) {
  std::size_t off = 0;
  for (auto& c : g.u) unpack(c, y, off);
  for (auto& c : g.v) unpack(c, y, off);
  unpack(g.theta, y, off);
}

std::vector<double> stacked_rhs(const GalerkinSystem& g, const ModelParams& p) {
  const auto r = galerkin_rhs(g, p);
  std::vector<double> y(stacked_size(g));
  std::size_t off = 0;
  for (const auto& c : r.du) pack(c, y, off);
  for (const auto& c : r.dv) pack(c, y, off);
  pack(r.dtheta, y, off);
  return y;
}

double l2_distance_squared(const GalerkinSystem& g, const std::vector<Complex>& a, const ScalarField& f) {
  double outside = 0.0;
  const auto proj = project_to_cube(g, f, &outside);
  std::vector<double> terms(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) terms[k] = std::norm(proj[k] - a[k]);
  return g.measure() * sum(terms) + outside;
}

void require_same_torus(const GalerkinSystem& g, const TorusGrid& grid, const char* context) {
  if (grid.dim() != g.dim) throw InvalidArgument(std::string(context) + ": dimension mismatch");
  for (int a = 0; a < g.dim; ++a) {
    if (std::fabs(grid.lengths()[static_cast<std::size_t>(a)] - g.lengths[static_cast<std::size_t>(a)]) >
        1e-12 * g.lengths[static_cast<std::size_t>(a)]) {
      throw InvalidArgument(std::string(context) + ": torus lengths differ");
    }
  }
}

}  // namespace

std::size_t GalerkinSystem::flat_index(const std::array<int, 3>& m) const noexcept {
  const std::size_t s = static_cast<std::size_t>(2 * n + 1);
  std::size_t flat = 0;
  for (int a = 0; a < dim; ++a) flat = flat * s + static_cast<std::size_t>(m[static_cast<std::size_t>(a)] + n);
  return flat;
}

double GalerkinSystem::measure() const noexcept {
  double m = 1.0;
  for (double l : lengths) m *= l;
  return m;
}

double GalerkinSystem::symmetry_defect() const {
  double worst = 0.0;
  auto scan = [&](const std::vector<Complex>& c) {
    for (std::size_t k = 0; k < c.size(); ++k) worst = std::max(worst, std::abs(c[mirror(k)] - std::conj(c[k])));
  };
  for (const auto& c : u) scan(c);
  for (const auto& c : v) scan(c);
  scan(theta);
  return worst;
}

void GalerkinSystem::symmetrize() {
  auto fix = [&](std::vector<Complex>& c) {
    for (std::size_t k = 0; k <= c.size() / 2; ++k) {
      const std::size_t j = mirror(k);
      const Complex avg = 0.5 * (c[k] + std::conj(c[j]));
      c[k] = avg;
      c[j] = std::conj(avg);
    }
  };
  for (auto& c : u) fix(c);
  for (auto& c : v) fix(c);
  fix(theta);
}

GalerkinSystem make_galerkin_system(int dim, int n, std::vector<double> lengths) {
  if (dim != 2 && dim != 3) throw InvalidArgument("Galerkin system: dimension must be 2 or 3");
  if (n < 0) throw InvalidArgument("Galerkin system: truncation must be >= 0");
  if (lengths.empty()) lengths.assign(static_cast<std::size_t>(dim), kTwoPi);
  if (lengths.size() != static_cast<std::size_t>(dim)) throw InvalidArgument("Galerkin system: wrong length count");
  for (double l : lengths) {
    if (!(l > 0.0)) throw InvalidArgument("Galerkin system: lengths must be positive");
  }
  GalerkinSystem g;
  g.dim = dim;
  g.n = n;
  g.lengths = std::move(lengths);
  const std::size_t s = side(g);
  std::size_t count = 1;
  for (int a = 0; a < dim; ++a) count *= s;
  g.modes.resize(count);
  g.wavevectors.resize(count);
  g.eigenvalues.resize(count);
  for (std::size_t flat = 0; flat < count; ++flat) {
    std::array<int, 3> m{0, 0, 0};
    std::size_t rest = flat;
    for (int a = dim - 1; a >= 0; --a) {
      m[static_cast<std::size_t>(a)] = static_cast<int>(rest % s) - n;
      rest /= s;
    }
    g.modes[flat] = m;
    double k2 = 0.0;
    std::array<double, 3> k{0.0, 0.0, 0.0};
    for (int a = 0; a < dim; ++a) {
      const auto ua = static_cast<std::size_t>(a);
      k[ua] = kTwoPi / g.lengths[ua] * m[ua];
      k2 += k[ua] * k[ua];
    }
    g.wavevectors[flat] = k;
    g.eigenvalues[flat] = k2;
  }
  g.u.assign(static_cast<std::size_t>(dim), std::vector<Complex>(count));
  g.v.assign(static_cast<std::size_t>(dim), std::vector<Complex>(count));
  g.theta.assign(count, Complex{});
  return g;
}

std::vector<Complex> project_to_cube(const GalerkinSystem& layout, const ScalarField& f, double* outside) {
  const auto& grid = f.grid();
  require_same_torus(layout, grid, "project_to_cube");
  const auto spec = forward(f);
  const auto& shape = grid.shape();
  const auto& sshape = grid.spectral_shape();
  const int d = grid.dim();
  std::vector<Complex> out(layout.mode_count());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto& m = layout.modes[k];
    std::array<int, 3> idx{0, 0, 0};
    double factor = 1.0;
    bool representable = true;
    for (int a = 0; a < d; ++a) {
      const auto ua = static_cast<std::size_t>(a);
      const int na = shape[ua];
      if (2 * std::abs(m[ua]) > na) {
        representable = false;
        break;
      }
      if (2 * std::abs(m[ua]) == na) factor *= 0.5;
      idx[ua] = ((m[ua] % na) + na) % na;
    }
    if (!representable) continue;
    bool conjugate = false;
    if (idx[static_cast<std::size_t>(d - 1)] >= sshape[static_cast<std::size_t>(d - 1)]) {
      conjugate = true;
      for (int a = 0; a < d; ++a) {
        const auto ua = static_cast<std::size_t>(a);
        idx[ua] = (shape[ua] - idx[ua]) % shape[ua];
      }
    }
    std::size_t flat = 0;
    for (int a = 0; a < d; ++a) {
      const auto ua = static_cast<std::size_t>(a);
      flat = flat * static_cast<std::size_t>(sshape[ua]) + static_cast<std::size_t>(idx[ua]);
    }
    const Complex c = spec.coeffs[flat];
    out[k] = factor * (conjugate ? std::conj(c) : c);
  }
  if (outside != nullptr) {
    // Summed directly over the grid modes the cube misses (rather than as
    // total minus captured) so a dominant mean does not cancel it away. A
    // Nyquist entry inside the cube keeps half its grid norm per Nyquist axis.
    const int n = layout.n;
    std::vector<double> terms(grid.spectral_size());
    std::array<int, 3> idx{0, 0, 0};
    for (std::size_t flat = 0; flat < terms.size(); ++flat) {
      std::size_t rest = flat;
      for (int a = d - 1; a >= 0; --a) {
        const auto ua = static_cast<std::size_t>(a);
        idx[ua] = static_cast<int>(rest % static_cast<std::size_t>(sshape[ua]));
        rest /= static_cast<std::size_t>(sshape[ua]);
      }
      bool missed = false;
      double kept = 1.0;
      for (int a = 0; a < d && !missed; ++a) {
        const int i = idx[static_cast<std::size_t>(a)];
        missed = std::abs(grid.frequency(a, i)) > n;
        if (grid.is_nyquist(a, i)) kept *= 0.5;
      }
      const double lost = missed ? 1.0 : 1.0 - kept;
      terms[flat] = lost * grid.hermitian_weight(flat) * std::norm(spec.coeffs[flat]);
    }
    *outside = grid.measure() * sum(terms);
  }
  return out;
}

GalerkinSystem build_galerkin(const SimState& s0, const ModelParams& p, int n) {
  s0.validate();
  p.validate(s0.grid().dim());
  const auto& grid = s0.grid();
  GalerkinSystem g = make_galerkin_system(grid.dim(), n, grid.lengths());
  g.t = s0.t;
  double lost = 0.0, total = 0.0;
  for (int a = 0; a < grid.dim(); ++a) {
    const auto ua = static_cast<std::size_t>(a);
    double out_u = 0.0, out_v = 0.0;
    g.u[ua] = project_to_cube(g, s0.u[a], &out_u);
    g.v[ua] = project_to_cube(g, s0.v[a], &out_v);
    lost += out_u + out_v;
    total += l2_squared(s0.u[a]) + l2_squared(s0.v[a]);
  }
  double out_theta = 0.0;
  g.theta = project_to_cube(g, s0.theta, &out_theta);
  lost += out_theta;
  total += l2_squared(s0.theta);
  g.projection_loss = total > 0.0 ? std::sqrt(lost / total) : 0.0;
  if (g.projection_loss > 1e-12) {
    std::ostringstream msg;
    msg << "Galerkin projection is lossy (relative L2 content outside the cube " << g.projection_loss << ")";
    log_warning(msg.str());
  }

  const double theta_min = galerkin_theta_min(g);
  g.regularization = std::max(0.0, kThetaRegularization - theta_min);
  g.theta[g.flat_index({0, 0, 0})] += g.regularization;

  // Compare Fisher informations on one common grid: embed the grid data in
  // the cube holding every grid mode and evaluate both there.
  int full_n = n;
  for (int na : grid.shape()) full_n = std::max(full_n, na / 2);
  const GalerkinSystem full = make_galerkin_system(grid.dim(), full_n, grid.lengths());
  const auto theta_full = project_to_cube(full, s0.theta);
  std::vector<Complex> theta_trunc(full.mode_count());
  for (std::size_t k = 0; k < full.mode_count(); ++k) {
    if (in_cube(g, full.modes[k])) theta_trunc[k] = g.theta[g.flat_index(full.modes[k])];
  }
  const double fisher_n = fisher_information_on(full, theta_trunc);
  const double fisher_0 = fisher_information_on(full, theta_full);
  if (fisher_n > fisher_0 * (1.0 + 1e-10) + 1e-14) {
    std::ostringstream msg;
    msg << "regularized Galerkin temperature increases the Fisher information (" << fisher_n << " > " << fisher_0
        << ")";
    log_warning(msg.str());
  }
  return g;
}

std::vector<Complex> truncated_convolution(const GalerkinSystem& g, std::span<const Complex> a,
                                           std::span<const Complex> b) {
  const std::size_t count = g.mode_count();
  if (a.size() != count || b.size() != count) throw InvalidArgument("truncated_convolution: size mismatch");
  std::vector<Complex> c(count);
  for (std::size_t k = 0; k < count; ++k) {
    const auto& mk = g.modes[k];
    Complex acc{};
    for (std::size_t q = 0; q < count; ++q) {
      const auto& mq = g.modes[q];
      const std::array<int, 3> diff{mk[0] - mq[0], mk[1] - mq[1], mk[2] - mq[2]};
      if (!in_cube(g, diff)) continue;
      acc += a[q] * b[g.flat_index(diff)];
    }
    c[k] = acc;
  }
  return c;
}

GalerkinTendencies galerkin_rhs(const GalerkinSystem& g, const ModelParams& p) {
  const std::size_t count = g.mode_count();
  const auto d = static_cast<std::size_t>(g.dim);
  const double cl = p.longitudinal_stiffness();
  const double ct = p.transverse_stiffness();
  GalerkinTendencies r;
  r.du = g.v;
  r.dv.assign(d, std::vector<Complex>(count));
  std::vector<Complex> div_v(count);
  for (std::size_t k = 0; k < count; ++k) {
    const auto& kv = g.wavevectors[k];
    const double k2 = g.eigenvalues[k];
    Complex ku{}, kw{};
    for (std::size_t a = 0; a < d; ++a) {
      ku += kv[a] * g.u[a][k];
      kw += kv[a] * g.v[a][k];
    }
    div_v[k] = kI * kw;
    for (std::size_t a = 0; a < d; ++a) {
      // A u = c_L k (k.u) + c_T (|k|^2 u - k (k.u))
      const Complex au = cl * kv[a] * ku + ct * (k2 * g.u[a][k] - kv[a] * ku);
      r.dv[a][k] = -au - p.mu * kI * kv[a] * g.theta[k];
    }
  }
  const auto prod = truncated_convolution(g, g.theta, div_v);
  r.dtheta.resize(count);
  for (std::size_t k = 0; k < count; ++k) r.dtheta[k] = -g.eigenvalues[k] * g.theta[k] - p.mu * prod[k];
  return r;
}

int oversampled_points(const GalerkinSystem& g) noexcept { return 4 * (2 * g.n + 1); }

std::vector<double> reconstruct(const GalerkinSystem& g, std::span<const Complex> coeffs, int per_axis) {
  if (coeffs.size() != g.mode_count()) throw InvalidArgument("reconstruct: size mismatch");
  if (per_axis < 1) throw InvalidArgument("reconstruct: need at least one point per axis");
  const std::size_t s = side(g);
  const auto pts = static_cast<std::size_t>(per_axis);
  std::vector<Complex> work(coeffs.begin(), coeffs.end());
  std::vector<std::size_t> shape(static_cast<std::size_t>(g.dim), s);
  for (std::size_t a = 0; a < shape.size(); ++a) {
    std::vector<Complex> e(pts * s);
    for (std::size_t j = 0; j < pts; ++j) {
      for (std::size_t m = 0; m < s; ++m) {
        const double freq = static_cast<double>(static_cast<int>(m) - g.n);
        e[j * s + m] = std::polar(1.0, kTwoPi * freq * static_cast<double>(j) / static_cast<double>(pts));
      }
    }
    work = contract(work, shape, a, e, pts);
  }
  std::vector<double> out(work.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = work[i].real();
  return out;
}

double galerkin_energy(const GalerkinSystem& g, const ModelParams& p) {
  const std::size_t count = g.mode_count();
  const auto d = static_cast<std::size_t>(g.dim);
  const double cl = p.longitudinal_stiffness();
  const double ct = p.transverse_stiffness();
  std::vector<double> terms(count);
  for (std::size_t k = 0; k < count; ++k) {
    double v2 = 0.0, u2 = 0.0;
    Complex ku{};
    for (std::size_t a = 0; a < d; ++a) {
      v2 += std::norm(g.v[a][k]);
      u2 += std::norm(g.u[a][k]);
      ku += g.wavevectors[k][a] * g.u[a][k];
    }
    const double kk = std::norm(ku);
    terms[k] = 0.5 * (v2 + cl * kk + ct * (g.eigenvalues[k] * u2 - kk));
  }
  return g.measure() * (sum(terms) + g.theta[g.flat_index({0, 0, 0})].real());
}

double galerkin_entropy(const GalerkinSystem& g) {
  auto vals = reconstruct(g, g.theta, oversampled_points(g));
  for (auto& x : vals) {
    if (!(x > 0.0)) throw PositivityLoss(g.t, x, "galerkin_entropy: temperature must be positive");
    x = std::log(x);
  }
  return g.measure() / static_cast<double>(vals.size()) * sum(vals);
}

double galerkin_theta_min(const GalerkinSystem& g) {
  const auto vals = reconstruct(g, g.theta, oversampled_points(g));
  return *std::min_element(vals.begin(), vals.end());
}

GalerkinTrajectory integrate_galerkin(const GalerkinSystem& g0, const ModelParams& p,
                                      std::span<const double> sample_times, const IntegratorOptions& opts) {
  p.validate(g0.dim);
  if (!(opts.rtol > 0.0) || !(opts.atol > 0.0)) throw InvalidArgument("integrate_galerkin: tolerances must be > 0");
  for (std::size_t i = 0; i < sample_times.size(); ++i) {
    const double prev = i == 0 ? g0.t : sample_times[i - 1];
    if (!(sample_times[i] >= prev)) throw InvalidArgument("integrate_galerkin: sample times must be nondecreasing");
  }

  // Dormand-Prince 5(4) tableau.
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  GalerkinTrajectory traj;
  traj.times.push_back(g0.t);
  traj.states.push_back(g0);

  GalerkinSystem work = g0;
  std::vector<double> y = to_stacked(g0);
  const std::size_t n = y.size();
  auto f = [&](const std::vector<double>& state) {
    from_stacked(work, state);
    return stacked_rhs(work, p);
  };

  std::vector<double> k1 = f(y), k2, k3, k4, k5, k6, k7, ytmp(n), ynew(n);
  double t = g0.t;
  double h = opts.initial_step;
  if (!(h > 0.0)) {
    double ny = 0.0, nf = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sc = opts.atol + opts.rtol * std::fabs(y[i]);
      ny += (y[i] / sc) * (y[i] / sc);
      nf += (k1[i] / sc) * (k1[i] / sc);
    }
    ny = std::sqrt(ny / static_cast<double>(n));
    nf = std::sqrt(nf / static_cast<double>(n));
    h = (ny < 1e-5 || nf < 1e-5) ? 1e-6 : 0.01 * ny / nf;
  }

  auto stage = [&](std::initializer_list<std::pair<double, const std::vector<double>*>> terms, double hh) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (const auto& [a, k] : terms) acc += a * (*k)[i];
      ytmp[i] = y[i] + hh * acc;
    }
    return f(ytmp);
  };

  std::size_t steps = 0;
  for (double target : sample_times) {
    while (t < target) {
      if (++steps > opts.max_steps) throw StepSizeUnderflow(t, "integrate_galerkin: step budget exhausted");
      bool land = false;
      double hh = h;
      if (t + hh >= target) {
        hh = target - t;
        land = true;
      }
      if (hh < 1e-14 * std::max(1.0, std::fabs(t))) {
        if (land) {
          t = target;
          break;
        }
        throw StepSizeUnderflow(t, "integrate_galerkin: step size underflow");
      }
      k2 = stage({{a21, &k1}}, hh);
      k3 = stage({{a31, &k1}, {a32, &k2}}, hh);
      k4 = stage({{a41, &k1}, {a42, &k2}, {a43, &k3}}, hh);
      k5 = stage({{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, hh);
      k6 = stage({{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, hh);
      for (std::size_t i = 0; i < n; ++i) {
        ynew[i] = y[i] + hh * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
      }
      k7 = f(ynew);
      double err = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double e =
            hh * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double sc = opts.atol + opts.rtol * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
        err += (e / sc) * (e / sc);
      }
      err = std::sqrt(err / static_cast<double>(n));
      if (!std::isfinite(err)) throw NonFinite(t, "integrate_galerkin: non-finite state");
      const double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      if (err <= 1.0) {
        t = land ? target : t + hh;
        from_stacked(work, ynew);
        work.t = t;
        work.symmetrize();
        y = to_stacked(work);
        const double tmin = galerkin_theta_min(work);
        if (!(tmin > 0.0)) throw PositivityLoss(t, tmin, "integrate_galerkin: reconstructed temperature not positive");
        k1 = f(y);
        ++traj.accepted_steps;
        // A landing step does not tell us anything about the natural step size.
        if (!land || grow < 1.0) h = hh * grow;
      } else {
        ++traj.rejected_steps;
        h = hh * std::max(0.2, grow);
      }
    }
    from_stacked(work, y);
    work.t = target;
    traj.times.push_back(target);
    traj.states.push_back(work);
  }
  return traj;
}

GalerkinTrajectory integrate_galerkin(const GalerkinSystem& g, const ModelParams& p, double t_end, double rtol,
                                      double atol) {
  IntegratorOptions opts;
  opts.rtol = rtol;
  opts.atol = atol;
  const double target = g.t + t_end;
  return integrate_galerkin(g, p, std::span<const double>(&target, 1), opts);
}

double OracleSample::max() const noexcept { return std::max({u_distance, v_distance, theta_distance}); }

double OracleComparison::max_distance() const noexcept { return std::max({max_u, max_v, max_theta}); }

OracleSample state_distance(const GalerkinSystem& g, const SimState& s) {
  require_same_torus(g, s.grid(), "state_distance");
  OracleSample out;
  out.t = s.t;
  double du = 0.0, dv = 0.0;
  for (int a = 0; a < g.dim; ++a) {
    du += l2_distance_squared(g, g.u[static_cast<std::size_t>(a)], s.u[a]);
    dv += l2_distance_squared(g, g.v[static_cast<std::size_t>(a)], s.v[a]);
  }
  out.u_distance = std::sqrt(du);
  out.v_distance = std::sqrt(dv);
  out.theta_distance = std::sqrt(l2_distance_squared(g, g.theta, s.theta));
  return out;
}

OracleComparison compare_oracle(const GalerkinTrajectory& oracle, std::span<const SimState> spectral,
                                double tolerance) {
  if (oracle.states.size() != spectral.size()) {
    throw InvalidArgument("compare_oracle: trajectories have different sample counts");
  }
  OracleComparison r;
  r.tolerance = tolerance;
  for (std::size_t i = 0; i < spectral.size(); ++i) {
    const double to = oracle.times[i];
    const double ts = spectral[i].t;
    if (std::fabs(to - ts) > 1e-9 * std::max(1.0, std::fabs(to))) {
      std::ostringstream msg;
      msg << "compare_oracle: sample " << i << " at t=" << to << " vs t=" << ts;
      throw InvalidArgument(msg.str());
    }
    auto sample = state_distance(oracle.states[i], spectral[i]);
    sample.t = to;
    r.max_u = std::max(r.max_u, sample.u_distance);
    r.max_v = std::max(r.max_v, sample.v_distance);
    r.max_theta = std::max(r.max_theta, sample.theta_distance);
    r.samples.push_back(sample);
  }
  return r;
}

}  // namespace thermo
