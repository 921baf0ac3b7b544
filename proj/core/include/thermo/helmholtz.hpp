#pragma once

#include "thermo/field.hpp"

namespace thermo {

/// Unique splitting v = div_free + curl_free with curl_free = grad(potential).
struct HelmholtzParts {
  VectorField div_free;
  VectorField curl_free;
  /// Zero-mean potential solving laplacian(potential) = div v.
  ScalarField potential;
};

/// Per nonzero mode the curl-free part is k k^T v(k) / |k|^2. The mean mode
/// belongs to the divergence-free part, so curl_free always has zero mean.
HelmholtzParts helmholtz_project(const VectorField& v);

/// Divergence-free part only (cheaper than the full projection).
VectorField divergence_free_part(const VectorField& v);
/// Curl-free part only.
VectorField curl_free_part(const VectorField& v);

}  // namespace thermo
