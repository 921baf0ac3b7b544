#pragma once

#include <variant>

#include "thermo/field.hpp"

namespace thermo {

// Exact spectral differential operators on the torus. Every operator
// multiplies Fourier modes by the symbol built from the effective wavevector
// of TorusGrid, so compositions are exact up to rounding.

VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& v);

/// Scalar curl u2_x1 - u1_x2 in 2D, the usual vector curl in 3D.
using CurlField = std::variant<ScalarField, VectorField>;
CurlField curl(const VectorField& v);
/// curl curl v; in 2D this is grad_perp(curl v) with grad_perp f = (f_x2, -f_x1).
VectorField curl_curl(const VectorField& v);

ScalarField laplacian(const ScalarField& f);
VectorField laplacian(const VectorField& v);

/// All second derivatives; (i,j) entry is d_i d_j f.
SymmetricMatrixField hessian(const ScalarField& f);

/// Lame moduli; valid when zeta > 0 and 2 zeta + d lambda > 0.
struct LameModuli {
  double zeta = 1.0;
  double lambda = 0.5;
  /// Longitudinal stiffness 2 zeta + lambda.
  double longitudinal() const noexcept { return 2.0 * zeta + lambda; }
};

/// Throws InvalidArgument when the moduli violate the positivity conditions in dimension d.
void validate_lame(const LameModuli& m, int dim);

/// L v = -(2 zeta + lambda) grad div v + zeta curl curl v.
VectorField lame_apply(const VectorField& v, const LameModuli& moduli);

/// Zeroes every mode outside the 2/3 band, in place on a spectrum.
void dealias(ScalarSpectrum& s);
/// Returns the field with its spectrum truncated by the 2/3 rule.
ScalarField dealiased(const ScalarField& f);

/// Maximum deviation from Hermitian symmetry over the self-conjugate planes
/// of a half spectrum, relative to the largest coefficient magnitude. This is
/// the imaginary residue an inverse transform would have to discard.
double hermitian_defect(const ScalarSpectrum& s);

namespace spectral {

// Spectrum-level kernels shared by the public operators and the stepper.
// Outputs are resized as needed.

void gradient(const TorusGrid& g, std::span<const Complex> f, std::vector<std::vector<Complex>>& out);
void divergence(const TorusGrid& g, const std::vector<std::vector<Complex>>& v, std::vector<Complex>& out);
void laplacian(const TorusGrid& g, std::span<const Complex> f, std::vector<Complex>& out);
/// Splits the mode vector v(k) into its part along k and across k. Modes with
/// vanishing effective wavevector are assigned wholly to the transverse part.
void longitudinal_part(const TorusGrid& g, const std::vector<std::vector<Complex>>& v,
                       std::vector<std::vector<Complex>>& longitudinal);

}  // namespace spectral

}  // namespace thermo
