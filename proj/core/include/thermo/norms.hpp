#pragma once

#include "thermo/field.hpp"

namespace thermo {

/// Norms and statistics of a scalar field. Integrals use the uniform
/// trapezoidal rule, which is exact for band-limited integrands.
struct FieldNorms {
  double l2 = 0.0;       ///< sqrt(int f^2)
  double h1_semi = 0.0;  ///< sqrt(int |grad f|^2)
  double l1 = 0.0;       ///< int |f|
  double linf = 0.0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;  ///< int f / |T^d|
};

FieldNorms field_norms(const ScalarField& f);

/// L2, H1-seminorm and pointwise-magnitude sup of a vector field.
struct VectorNorms {
  double l2 = 0.0;
  double h1_semi = 0.0;
  double linf = 0.0;
};

VectorNorms field_norms(const VectorField& v);

double integrate(const ScalarField& f);
double inner(const ScalarField& a, const ScalarField& b);
double inner(const VectorField& a, const VectorField& b);
double l2_squared(const ScalarField& f);
double l2_squared(const VectorField& v);

/// int |f|^2 evaluated from the spectrum (Parseval).
double spectral_l2_squared(const ScalarSpectrum& s);
/// int |grad f|^2 evaluated from the spectrum.
double spectral_h1_semi_squared(const ScalarSpectrum& s);
/// sum over components of int |grad v_c|^2.
double h1_semi_squared(const VectorField& v);

double min_value(const ScalarField& f) noexcept;
double max_value(const ScalarField& f) noexcept;

}  // namespace thermo
