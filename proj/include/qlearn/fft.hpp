#pragma once

#include <fftw3.h>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <mutex>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "qlearn/error.hpp"

namespace qlearn {

namespace detail {
// The FFTW planner is not re-entrant; execution of an existing plan is.
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace detail

/// In-place complex DFT of a fixed length backed by FFTW.
///
/// Each instance owns its work buffer, so one instance must not be used from
/// two threads at once. Distinct instances are independent.
class Fft {
 public:
  explicit Fft(std::size_t n) : n_(n) {
    if (n == 0) throw DomainError("FFT length must be positive");
    std::lock_guard lock(detail::fftw_planner_mutex());
    buf_ = fftw_alloc_complex(n_);
    if (buf_ == nullptr) throw NumericalError("fftw_alloc_complex failed");
    const int len = static_cast<int>(n_);
    forward_ = fftw_plan_dft_1d(len, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_1d(len, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (forward_ == nullptr || backward_ == nullptr) {
      release();
      throw NumericalError("FFTW planning failed");
    }
  }

  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  Fft(Fft&& other) noexcept
      : n_(other.n_),
        buf_(std::exchange(other.buf_, nullptr)),
        forward_(std::exchange(other.forward_, nullptr)),
        backward_(std::exchange(other.backward_, nullptr)) {}

  Fft& operator=(Fft&& other) noexcept {
    if (this != &other) {
      std::lock_guard lock(detail::fftw_planner_mutex());
      release();
      n_ = other.n_;
      buf_ = std::exchange(other.buf_, nullptr);
      forward_ = std::exchange(other.forward_, nullptr);
      backward_ = std::exchange(other.backward_, nullptr);
    }
    return *this;
  }

  ~Fft() {
    if (buf_ == nullptr && forward_ == nullptr && backward_ == nullptr) return;
    std::lock_guard lock(detail::fftw_planner_mutex());
    release();
  }

  std::size_t size() const noexcept { return n_; }

  /// Unnormalized forward transform, sum_j f_j exp(-2 pi i jk/n).
  void forward(std::span<std::complex<double>> data) { run(forward_, data, 1.0); }

  /// Inverse transform including the 1/n factor.
  void inverse(std::span<std::complex<double>> data) {
    run(backward_, data, 1.0 / static_cast<double>(n_));
  }

 private:
  void run(fftw_plan plan, std::span<std::complex<double>> data, double scale) {
    if (data.size() != n_) throw DomainError("FFT input length mismatch");
    auto* work = reinterpret_cast<std::complex<double>*>(buf_);
    std::copy(data.begin(), data.end(), work);
    fftw_execute(plan);
    if (scale == 1.0) {
      std::copy(work, work + n_, data.begin());
    } else {
      std::transform(work, work + n_, data.begin(), [scale](std::complex<double> c) { return c * scale; });
    }
  }

  void release() noexcept {
    if (forward_ != nullptr) fftw_destroy_plan(forward_);
    if (backward_ != nullptr) fftw_destroy_plan(backward_);
    if (buf_ != nullptr) fftw_free(buf_);
    forward_ = backward_ = nullptr;
    buf_ = nullptr;
  }

  std::size_t n_;
  fftw_complex* buf_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

/// Angular wavenumbers matching the FFT output ordering of a periodic grid
/// with n points and spacing dx.
inline std::vector<double> wavenumbers(std::size_t n, double dx) {
  std::vector<double> k(n);
  const double base = 2.0 * std::numbers::pi / (static_cast<double>(n) * dx);
  for (std::size_t j = 0; j < n; ++j) {
    const auto signed_j = j <= n / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(n);
    k[j] = base * signed_j;
  }
  return k;
}

}  // namespace qlearn
