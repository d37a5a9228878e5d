#pragma once

// Thin RAII layer over FFTW. Forward transforms carry exp(-i k.x) and are
// unnormalized; backward transforms carry exp(+i k.x) and callers divide by N.

#include <fftw3.h>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "pwf/errors.hpp"

namespace pwf::fft {

using cplx = std::complex<double>;

enum class Direction : int { forward = FFTW_FORWARD, backward = FFTW_BACKWARD };

namespace detail {
// FFTW's planner is not re-entrant; execution is.
inline std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

inline fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }
}  // namespace detail

/// Batched complex-to-complex transform of `howmany` contiguous row-major arrays of shape `shape`.
class BatchedPlan {
 public:
  BatchedPlan(std::vector<int> shape, int howmany, Direction dir)
      : shape_(std::move(shape)), howmany_(howmany) {
    std::size_t n = 1;
    for (int s : shape_) n *= static_cast<std::size_t>(s);
    batch_size_ = n;
    std::vector<cplx> probe(n * static_cast<std::size_t>(howmany));
    std::lock_guard lock(detail::planner_mutex());
    plan_ = fftw_plan_many_dft(static_cast<int>(shape_.size()), shape_.data(), howmany,
                               detail::as_fftw(probe.data()), nullptr, 1, static_cast<int>(n),
                               detail::as_fftw(probe.data()), nullptr, 1, static_cast<int>(n),
                               static_cast<int>(dir), FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan_ == nullptr) throw NumericalError("fftw_plan_many_dft failed");
  }

  BatchedPlan(const BatchedPlan&) = delete;
  BatchedPlan& operator=(const BatchedPlan&) = delete;

  ~BatchedPlan() {
    if (plan_ != nullptr) {
      std::lock_guard lock(detail::planner_mutex());
      fftw_destroy_plan(plan_);
    }
  }

  std::size_t batch_size() const { return batch_size_; }
  std::size_t total_size() const { return batch_size_ * static_cast<std::size_t>(howmany_); }

  /// In-place execution on an array of total_size() elements.
  void execute(std::span<cplx> data) const {
    if (data.size() != total_size()) throw ValidationError("fft: buffer size mismatch");
    fftw_execute_dft(plan_, detail::as_fftw(data.data()), detail::as_fftw(data.data()));
  }

 private:
  std::vector<int> shape_;
  int howmany_;
  std::size_t batch_size_ = 0;
  fftw_plan plan_ = nullptr;
};

/// SIMD-aligned buffer from fftw_malloc.
template <class T>
class AlignedBuffer {
 public:
  explicit AlignedBuffer(std::size_t n)
      : size_(n), ptr_(static_cast<T*>(fftw_malloc(sizeof(T) * n))) {
    if (!ptr_) throw std::bad_alloc();
    std::fill(ptr_.get(), ptr_.get() + n, T{});
  }
  T* data() { return ptr_.get(); }
  const T* data() const { return ptr_.get(); }
  std::size_t size() const { return size_; }
  std::span<T> span() { return {ptr_.get(), size_}; }
  T& operator[](std::size_t i) { return ptr_.get()[i]; }
  const T& operator[](std::size_t i) const { return ptr_.get()[i]; }

 private:
  struct Free {
    void operator()(T* p) const { fftw_free(p); }
  };
  std::size_t size_;
  std::unique_ptr<T, Free> ptr_;
};

/// Batched real-to-complex / complex-to-real pair for real fields (last axis halved).
/// Plans are made for aligned buffers; execute only on AlignedBuffer storage.
class RealPlanPair {
 public:
  RealPlanPair(std::vector<int> shape, int howmany) : shape_(std::move(shape)), howmany_(howmany) {
    real_size_ = 1;
    for (int s : shape_) real_size_ *= static_cast<std::size_t>(s);
    half_size_ = real_size_ / static_cast<std::size_t>(shape_.back()) *
                 static_cast<std::size_t>(shape_.back() / 2 + 1);
    AlignedBuffer<double> r(real_size_ * static_cast<std::size_t>(howmany));
    AlignedBuffer<cplx> c(half_size_ * static_cast<std::size_t>(howmany));
    const int rank = static_cast<int>(shape_.size());
    std::lock_guard lock(detail::planner_mutex());
    r2c_ = fftw_plan_many_dft_r2c(rank, shape_.data(), howmany, r.data(), nullptr, 1,
                                  static_cast<int>(real_size_), detail::as_fftw(c.data()), nullptr,
                                  1, static_cast<int>(half_size_), FFTW_ESTIMATE);
    c2r_ = fftw_plan_many_dft_c2r(rank, shape_.data(), howmany, detail::as_fftw(c.data()), nullptr,
                                  1, static_cast<int>(half_size_), r.data(), nullptr, 1,
                                  static_cast<int>(real_size_), FFTW_ESTIMATE);
    if (r2c_ == nullptr || c2r_ == nullptr) throw NumericalError("fftw real plan failed");
  }

  RealPlanPair(const RealPlanPair&) = delete;
  RealPlanPair& operator=(const RealPlanPair&) = delete;

  ~RealPlanPair() {
    std::lock_guard lock(detail::planner_mutex());
    if (r2c_ != nullptr) fftw_destroy_plan(r2c_);
    if (c2r_ != nullptr) fftw_destroy_plan(c2r_);
  }

  std::size_t real_size() const { return real_size_; }
  std::size_t half_size() const { return half_size_; }

  void forward(AlignedBuffer<double>& in, AlignedBuffer<cplx>& out) const {
    fftw_execute_dft_r2c(r2c_, in.data(), detail::as_fftw(out.data()));
  }

  /// Destroys `in`.
  void backward(AlignedBuffer<cplx>& in, AlignedBuffer<double>& out) const {
    fftw_execute_dft_c2r(c2r_, detail::as_fftw(in.data()), out.data());
  }

 private:
  std::vector<int> shape_;
  int howmany_;
  std::size_t real_size_ = 0;
  std::size_t half_size_ = 0;
  fftw_plan r2c_ = nullptr;
  fftw_plan c2r_ = nullptr;
};

}  // namespace pwf::fft
