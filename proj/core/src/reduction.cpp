#include "thermo/reduction.hpp"

#include <atomic>
#include <cmath>
#include <cstddef>

namespace thermo {

namespace {

std::atomic<ReductionMode> g_mode{ReductionMode::Deterministic};

// Neumaier's variant of Kahan summation.
struct CompensatedSum {
  double s = 0.0;
  double c = 0.0;
  void add(double x) noexcept {
    const double t = s + x;
    if (std::fabs(s) >= std::fabs(x)) {
      c += (s - t) + x;
    } else {
      c += (x - t) + s;
    }
    s = t;
  }
  double value() const noexcept { return s + c; }
};

#if defined(THERMO_PARALLEL_REDUCTION)
bool use_parallel() noexcept { return g_mode.load(std::memory_order_relaxed) == ReductionMode::Parallel; }
#endif

}  // namespace

void set_reduction_mode(ReductionMode mode) noexcept { g_mode.store(mode, std::memory_order_relaxed); }

ReductionMode reduction_mode() noexcept { return g_mode.load(std::memory_order_relaxed); }

bool parallel_reduction_available() noexcept {
#if defined(THERMO_PARALLEL_REDUCTION)
  return true;
#else
  return false;
#endif
}

double sum(std::span<const double> values) noexcept {
#if defined(THERMO_PARALLEL_REDUCTION)
  if (use_parallel()) {
    double s = 0.0;
    const auto n = static_cast<long long>(values.size());
#pragma omp parallel for reduction(+ : s)
    for (long long i = 0; i < n; ++i) s += values[static_cast<std::size_t>(i)];
    return s;
  }
#endif
  CompensatedSum acc;
  for (double x : values) acc.add(x);
  return acc.value();
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  const std::size_t n = a.size() < b.size() ? a.size() : b.size();
#if defined(THERMO_PARALLEL_REDUCTION)
  if (use_parallel()) {
    double s = 0.0;
    const auto nn = static_cast<long long>(n);
#pragma omp parallel for reduction(+ : s)
    for (long long i = 0; i < nn; ++i) s += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
    return s;
  }
#endif
  CompensatedSum acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(a[i] * b[i]);
  return acc.value();
}

}  // namespace thermo
