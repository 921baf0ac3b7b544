#include "thermo/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "thermo/error.hpp"

namespace thermo {

namespace {

// The FFTW planner is not thread-safe; execution with the new-array API is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct TorusGrid::Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (r2c != nullptr) fftw_destroy_plan(r2c);
    if (c2r != nullptr) fftw_destroy_plan(c2r);
  }
};

TorusGrid::TorusGrid(int dim, std::vector<int> n_per_axis, std::vector<double> length_per_axis)
    : dim_(dim), n_(std::move(n_per_axis)), len_(std::move(length_per_axis)) {
  if (dim_ != 2 && dim_ != 3) {
    throw InvalidArgument("grid dimension must be 2 or 3, got " + std::to_string(dim_));
  }
  if (static_cast<int>(n_.size()) != dim_) {
    throw InvalidArgument("expected " + std::to_string(dim_) + " axis sizes, got " +
                          std::to_string(n_.size()));
  }
  if (len_.empty()) len_.assign(static_cast<std::size_t>(dim_), kTwoPi);
  if (static_cast<int>(len_.size()) != dim_) {
    throw InvalidArgument("expected " + std::to_string(dim_) + " axis lengths, got " +
                          std::to_string(len_.size()));
  }
  for (int a = 0; a < dim_; ++a) {
    if (n_[a] < 4 || n_[a] % 2 != 0) {
      throw InvalidArgument("axis " + std::to_string(a) + ": points per axis must be even and >= 4, got " +
                            std::to_string(n_[a]));
    }
    if (!(len_[a] > 0.0) || !std::isfinite(len_[a])) {
      throw InvalidArgument("axis " + std::to_string(a) + ": period must be positive and finite");
    }
  }

  spec_n_ = n_;
  spec_n_.back() = n_.back() / 2 + 1;
  size_ = 1;
  spectral_size_ = 1;
  measure_ = 1.0;
  for (int a = 0; a < dim_; ++a) {
    size_ *= static_cast<std::size_t>(n_[a]);
    spectral_size_ *= static_cast<std::size_t>(spec_n_[a]);
    measure_ *= len_[a];
  }
  cell_volume_ = measure_ / static_cast<double>(size_);

  k_.assign(static_cast<std::size_t>(dim_) * spectral_size_, 0.0);
  k2_.assign(spectral_size_, 0.0);
  dealias_keep_.assign(spectral_size_, 1);
  weight_.assign(spectral_size_, 1.0);
  for (std::size_t s = 0; s < spectral_size_; ++s) {
    const auto idx = unflatten_spectral(s);
    double k2 = 0.0;
    for (int a = 0; a < dim_; ++a) {
      const int m = frequency(a, idx[a]);
      const double k = is_nyquist(a, idx[a]) ? 0.0 : kTwoPi / len_[a] * m;
      k_[static_cast<std::size_t>(a) * spectral_size_ + s] = k;
      k2 += k * k;
      if (3 * std::abs(m) > n_[a]) dealias_keep_[s] = 0;
    }
    k2_[s] = k2;
    const int last = idx[dim_ - 1];
    const bool self_conjugate_plane = last == 0 || is_nyquist(dim_ - 1, last);
    weight_[s] = self_conjugate_plane ? 1.0 : 2.0;
  }

  plans_ = std::make_unique<Plans>();
  std::vector<double> real_scratch(size_);
  std::vector<Complex> spec_scratch(spectral_size_);
  auto* rp = real_scratch.data();
  auto* cp = reinterpret_cast<fftw_complex*>(spec_scratch.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::lock_guard lock(planner_mutex());
  plans_->r2c = fftw_plan_dft_r2c(dim_, n_.data(), rp, cp, flags);
  plans_->c2r = fftw_plan_dft_c2r(dim_, n_.data(), cp, rp, flags);
  if (plans_->r2c == nullptr || plans_->c2r == nullptr) {
    throw Error("FFTW failed to create transform plans");
  }
}

TorusGrid::~TorusGrid() = default;

std::array<int, 3> TorusGrid::unflatten(std::size_t flat) const noexcept {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = dim_ - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % static_cast<std::size_t>(n_[a]));
    flat /= static_cast<std::size_t>(n_[a]);
  }
  return idx;
}

std::array<int, 3> TorusGrid::unflatten_spectral(std::size_t flat) const noexcept {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = dim_ - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % static_cast<std::size_t>(spec_n_[a]));
    flat /= static_cast<std::size_t>(spec_n_[a]);
  }
  return idx;
}

int TorusGrid::frequency(int axis, int i) const noexcept {
  const int n = n_[axis];
  return 2 * i <= n ? i : i - n;
}

void TorusGrid::forward(std::span<const double> values, std::span<Complex> spectrum) const {
  if (values.size() != size_ || spectrum.size() != spectral_size_) {
    throw InvalidArgument("forward transform: buffer size does not match grid");
  }
  // r2c does not modify its input for out-of-place multi-dimensional plans.
  fftw_execute_dft_r2c(plans_->r2c, const_cast<double*>(values.data()),
                       reinterpret_cast<fftw_complex*>(spectrum.data()));
  const double scale = 1.0 / static_cast<double>(size_);
  for (auto& c : spectrum) c *= scale;
}

void TorusGrid::inverse(std::span<const Complex> spectrum, std::span<double> values) const {
  if (values.size() != size_ || spectrum.size() != spectral_size_) {
    throw InvalidArgument("inverse transform: buffer size does not match grid");
  }
  // c2r destroys its input.
  std::vector<Complex> scratch(spectrum.begin(), spectrum.end());
  fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex*>(scratch.data()), values.data());
}

GridPtr make_grid(int dim, const std::vector<int>& n_per_axis, const std::vector<double>& length_per_axis) {
  return std::make_shared<const TorusGrid>(dim, n_per_axis, length_per_axis);
}

GridPtr make_uniform_grid(int dim, int n, double length) {
  if (dim != 2 && dim != 3) {
    throw InvalidArgument("grid dimension must be 2 or 3, got " + std::to_string(dim));
  }
  return make_grid(dim, std::vector<int>(static_cast<std::size_t>(dim), n),
                   std::vector<double>(static_cast<std::size_t>(dim), length));
}

bool same_grid(const TorusGrid& a, const TorusGrid& b) noexcept {
  return &a == &b || (a.shape() == b.shape() && a.lengths() == b.lengths());
}

}  // namespace thermo
