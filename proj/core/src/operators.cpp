#include "thermo/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "thermo/error.hpp"

namespace thermo {

namespace {

constexpr Complex kI{0.0, 1.0};

ScalarField to_field(const GridPtr& g, const std::vector<Complex>& c) { return inverse(ScalarSpectrum{g, c}); }

VectorField to_field(const GridPtr& g, const std::vector<std::vector<Complex>>& c) {
  return inverse(VectorSpectrum{g, c});
}

// (k . v)(k) for every mode.
std::vector<Complex> k_dot(const TorusGrid& g, const std::vector<std::vector<Complex>>& v) {
  std::vector<Complex> out(g.spectral_size(), Complex{});
  for (int a = 0; a < g.dim(); ++a) {
    const auto& va = v[static_cast<std::size_t>(a)];
    for (std::size_t s = 0; s < out.size(); ++s) out[s] += g.wavenumber(s, a) * va[s];
  }
  return out;
}

}  // namespace

namespace spectral {

void gradient(const TorusGrid& g, std::span<const Complex> f, std::vector<std::vector<Complex>>& out) {
  out.resize(static_cast<std::size_t>(g.dim()));
  for (int a = 0; a < g.dim(); ++a) {
    auto& oa = out[static_cast<std::size_t>(a)];
    oa.resize(g.spectral_size());
    for (std::size_t s = 0; s < g.spectral_size(); ++s) oa[s] = kI * g.wavenumber(s, a) * f[s];
  }
}

void divergence(const TorusGrid& g, const std::vector<std::vector<Complex>>& v, std::vector<Complex>& out) {
  out = k_dot(g, v);
  for (auto& c : out) c *= kI;
}

void laplacian(const TorusGrid& g, std::span<const Complex> f, std::vector<Complex>& out) {
  out.resize(g.spectral_size());
  for (std::size_t s = 0; s < g.spectral_size(); ++s) out[s] = -g.k_squared(s) * f[s];
}

void longitudinal_part(const TorusGrid& g, const std::vector<std::vector<Complex>>& v,
                       std::vector<std::vector<Complex>>& longitudinal) {
  const auto kv = k_dot(g, v);
  longitudinal.assign(static_cast<std::size_t>(g.dim()), std::vector<Complex>(g.spectral_size(), Complex{}));
  for (std::size_t s = 0; s < g.spectral_size(); ++s) {
    const double k2 = g.k_squared(s);
    if (k2 == 0.0) continue;
    const Complex proj = kv[s] / k2;
    for (int a = 0; a < g.dim(); ++a) longitudinal[static_cast<std::size_t>(a)][s] = g.wavenumber(s, a) * proj;
  }
}

}  // namespace spectral

VectorField gradient(const ScalarField& f) {
  const auto fs = forward(f);
  std::vector<std::vector<Complex>> out;
  spectral::gradient(f.grid(), fs.coeffs, out);
  return to_field(f.grid_ptr(), out);
}

ScalarField divergence(const VectorField& v) {
  const auto vs = forward(v);
  std::vector<Complex> out;
  spectral::divergence(v.grid(), vs.comps, out);
  return to_field(v.grid_ptr(), out);
}

CurlField curl(const VectorField& v) {
  const auto& g = v.grid();
  const auto vs = forward(v);
  const auto& c = vs.comps;
  if (g.dim() == 2) {
    std::vector<Complex> out(g.spectral_size());
    for (std::size_t s = 0; s < out.size(); ++s) {
      out[s] = kI * (g.wavenumber(s, 0) * c[1][s] - g.wavenumber(s, 1) * c[0][s]);
    }
    return to_field(v.grid_ptr(), out);
  }
  std::vector<std::vector<Complex>> out(3, std::vector<Complex>(g.spectral_size()));
  for (std::size_t s = 0; s < g.spectral_size(); ++s) {
    const double k1 = g.wavenumber(s, 0), k2 = g.wavenumber(s, 1), k3 = g.wavenumber(s, 2);
    out[0][s] = kI * (k2 * c[2][s] - k3 * c[1][s]);
    out[1][s] = kI * (k3 * c[0][s] - k1 * c[2][s]);
    out[2][s] = kI * (k1 * c[1][s] - k2 * c[0][s]);
  }
  return to_field(v.grid_ptr(), out);
}

VectorField curl_curl(const VectorField& v) {
  // Symbol |k|^2 v - k (k . v), identical for the 2D and 3D conventions.
  const auto& g = v.grid();
  auto vs = forward(v);
  const auto kv = k_dot(g, vs.comps);
  for (int a = 0; a < g.dim(); ++a) {
    auto& ca = vs.comps[static_cast<std::size_t>(a)];
    for (std::size_t s = 0; s < g.spectral_size(); ++s) {
      ca[s] = g.k_squared(s) * ca[s] - g.wavenumber(s, a) * kv[s];
    }
  }
  return inverse(vs);
}

ScalarField laplacian(const ScalarField& f) {
  const auto fs = forward(f);
  std::vector<Complex> out;
  spectral::laplacian(f.grid(), fs.coeffs, out);
  return to_field(f.grid_ptr(), out);
}

VectorField laplacian(const VectorField& v) {
  std::vector<ScalarField> comps;
  comps.reserve(static_cast<std::size_t>(v.dim()));
  for (int c = 0; c < v.dim(); ++c) comps.push_back(laplacian(v[c]));
  return VectorField(std::move(comps));
}

SymmetricMatrixField hessian(const ScalarField& f) {
  const auto& g = f.grid();
  const auto fs = forward(f);
  SymmetricMatrixField h(f.grid_ptr());
  std::vector<Complex> tmp(g.spectral_size());
  for (int i = 0; i < g.dim(); ++i) {
    for (int j = i; j < g.dim(); ++j) {
      for (std::size_t s = 0; s < tmp.size(); ++s) tmp[s] = -g.wavenumber(s, i) * g.wavenumber(s, j) * fs.coeffs[s];
      g.inverse(tmp, h(i, j).values());
    }
  }
  return h;
}

void validate_lame(const LameModuli& m, int dim) {
  if (!(m.zeta > 0.0)) throw InvalidArgument("Lame modulus zeta must be > 0");
  if (!(2.0 * m.zeta + dim * m.lambda > 0.0)) {
    throw InvalidArgument("Lame moduli must satisfy 2*zeta + d*lambda > 0 (d = " + std::to_string(dim) + ")");
  }
}

VectorField lame_apply(const VectorField& v, const LameModuli& moduli) {
  const auto& g = v.grid();
  validate_lame(moduli, g.dim());
  auto vs = forward(v);
  const auto kv = k_dot(g, vs.comps);
  const double lon = moduli.longitudinal();
  for (int a = 0; a < g.dim(); ++a) {
    auto& ca = vs.comps[static_cast<std::size_t>(a)];
    for (std::size_t s = 0; s < g.spectral_size(); ++s) {
      const Complex along = g.wavenumber(s, a) * kv[s];
      ca[s] = lon * along + moduli.zeta * (g.k_squared(s) * ca[s] - along);
    }
  }
  return inverse(vs);
}

void dealias(ScalarSpectrum& s) {
  const auto& g = *s.grid;
  for (std::size_t m = 0; m < g.spectral_size(); ++m) {
    if (!g.keeps_after_dealias(m)) s.coeffs[m] = Complex{};
  }
}

ScalarField dealiased(const ScalarField& f) {
  auto s = forward(f);
  dealias(s);
  return inverse(s);
}

double hermitian_defect(const ScalarSpectrum& s) {
  const auto& g = *s.grid;
  const int d = g.dim();
  const auto& sn = g.spectral_shape();
  double max_mag = 0.0;
  for (const auto& c : s.coeffs) max_mag = std::max(max_mag, std::abs(c));
  if (max_mag == 0.0) return 0.0;
  double defect = 0.0;
  for (std::size_t m = 0; m < g.spectral_size(); ++m) {
    const auto idx = g.unflatten_spectral(m);
    const int last = idx[d - 1];
    if (!(last == 0 || g.is_nyquist(d - 1, last))) continue;
    std::size_t mirror = 0;
    for (int a = 0; a < d; ++a) {
      const int n = g.shape()[a];
      const int i = (a == d - 1) ? last : (n - idx[a]) % n;
      mirror = mirror * static_cast<std::size_t>(sn[a]) + static_cast<std::size_t>(i);
    }
    defect = std::max(defect, std::abs(s.coeffs[m] - std::conj(s.coeffs[mirror])));
  }
  return defect / max_mag;
}

}  // namespace thermo
