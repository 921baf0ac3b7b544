#pragma once

#include <span>

namespace thermo {

/// How grid-wide sums are evaluated.
///
/// `Deterministic` sums in index order with Neumaier compensation and is the
/// default. `Parallel` is only honoured when the library was configured with
/// THERMO_DETERMINISTIC_REDUCTION=OFF and OpenMP is available; results then
/// differ from the deterministic mode by reduction-order rounding only.
enum class ReductionMode { Deterministic, Parallel };

void set_reduction_mode(ReductionMode mode) noexcept;
ReductionMode reduction_mode() noexcept;
/// True when the build can honour ReductionMode::Parallel.
bool parallel_reduction_available() noexcept;

double sum(std::span<const double> values) noexcept;
double dot(std::span<const double> a, std::span<const double> b) noexcept;

}  // namespace thermo
