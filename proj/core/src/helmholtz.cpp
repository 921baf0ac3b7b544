#include "thermo/helmholtz.hpp"

#include "thermo/operators.hpp"

namespace thermo {

namespace {

std::vector<std::vector<Complex>> longitudinal(const VectorSpectrum& vs) {
  std::vector<std::vector<Complex>> lon;
  spectral::longitudinal_part(*vs.grid, vs.comps, lon);
  return lon;
}

}  // namespace

HelmholtzParts helmholtz_project(const VectorField& v) {
  const auto& g = v.grid();
  const auto vs = forward(v);
  auto lon = longitudinal(vs);

  VectorSpectrum transverse{vs.grid, vs.comps};
  for (int a = 0; a < g.dim(); ++a) {
    auto& ta = transverse.comps[static_cast<std::size_t>(a)];
    const auto& la = lon[static_cast<std::size_t>(a)];
    for (std::size_t s = 0; s < g.spectral_size(); ++s) ta[s] -= la[s];
  }

  // potential(k) = -i (k . v(k)) / |k|^2, so that grad(potential) = k k^T v / |k|^2.
  ScalarSpectrum pot{vs.grid, std::vector<Complex>(g.spectral_size(), Complex{})};
  for (std::size_t s = 0; s < g.spectral_size(); ++s) {
    const double k2 = g.k_squared(s);
    if (k2 == 0.0) continue;
    Complex kv{};
    for (int a = 0; a < g.dim(); ++a) kv += g.wavenumber(s, a) * vs.comps[static_cast<std::size_t>(a)][s];
    pot.coeffs[s] = Complex{0.0, -1.0} * kv / k2;
  }

  return HelmholtzParts{inverse(transverse), inverse(VectorSpectrum{vs.grid, std::move(lon)}), inverse(pot)};
}

VectorField divergence_free_part(const VectorField& v) {
  auto vs = forward(v);
  const auto lon = longitudinal(vs);
  for (std::size_t a = 0; a < vs.comps.size(); ++a) {
    for (std::size_t s = 0; s < vs.comps[a].size(); ++s) vs.comps[a][s] -= lon[a][s];
  }
  return inverse(vs);
}

VectorField curl_free_part(const VectorField& v) {
  const auto vs = forward(v);
  return inverse(VectorSpectrum{vs.grid, longitudinal(vs)});
}

}  // namespace thermo
