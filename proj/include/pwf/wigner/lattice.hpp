#pragma once

// Transverse-plane states on centered lattices, and the two optical operations the
// parity-inverting interferometer is built from: 2D parity and phase-space displacement.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <numbers>
#include <string>
#include <vector>

#include "pwf/errors.hpp"
#include "pwf/fft.hpp"
#include "pwf/grid.hpp"
#include "pwf/units.hpp"

namespace pwf {

using cplx = std::complex<double>;

/// Centered sampling axis: x_i = (i - n/2) dx, dx = L/n, n even. The origin sits at
/// index n/2 and i -> (n - i) mod n maps x -> -x on the periodic lattice.
class Axis {
 public:
  Axis() = default;
  Axis(std::size_t n, double length) : n_(n), length_(length) {
    detail::require(n >= 2 && n % 2 == 0, "Axis: sample count must be even and >= 2, got " + std::to_string(n));
    detail::require(std::isfinite(length) && length > 0.0, "Axis: length must be positive");
  }

  std::size_t size() const { return n_; }
  double length() const { return length_; }
  double spacing() const { return length_ / static_cast<double>(n_); }
  double x(std::size_t i) const {
    return (static_cast<double>(i) - static_cast<double>(n_ / 2)) * spacing();
  }
  std::size_t origin() const { return n_ / 2; }
  std::size_t reflect(std::size_t i) const { return (n_ - i) % n_; }

  friend bool operator==(const Axis&, const Axis&) = default;

 private:
  std::size_t n_ = 2;
  double length_ = 1.0;
};

/// Scalar transverse amplitude on D centered axes, row-major (last axis fastest).
template <std::size_t D>
struct TransverseState {
  std::array<Axis, D> axes;
  Units units;
  std::vector<cplx> amplitude;
  /// Set when a sub-cell displacement was applied by Fourier-shift interpolation.
  bool interpolated = false;

  TransverseState() = default;
  explicit TransverseState(const std::array<Axis, D>& a, Units u = {}) : axes(a), units(u) {
    amplitude.assign(total_size(), cplx{});
  }

  std::size_t total_size() const {
    std::size_t n = 1;
    for (const auto& a : axes) n *= a.size();
    return n;
  }

  /// Stride of axis `a` in the flat array.
  std::size_t stride(std::size_t a) const {
    std::size_t s = 1;
    for (std::size_t b = a + 1; b < D; ++b) s *= axes[b].size();
    return s;
  }

  std::array<std::size_t, D> unflatten(std::size_t flat) const {
    std::array<std::size_t, D> idx{};
    for (std::size_t a = D; a-- > 0;) {
      idx[a] = flat % axes[a].size();
      flat /= axes[a].size();
    }
    return idx;
  }

  std::size_t flatten(const std::array<std::size_t, D>& idx) const {
    std::size_t f = 0;
    for (std::size_t a = 0; a < D; ++a) f = f * axes[a].size() + idx[a];
    return f;
  }

  double cell_measure() const {
    double m = 1.0;
    for (const auto& a : axes) m *= a.spacing();
    return m;
  }

  cplx& operator[](const std::array<std::size_t, D>& idx) { return amplitude[flatten(idx)]; }
  const cplx& operator[](const std::array<std::size_t, D>& idx) const { return amplitude[flatten(idx)]; }
};

using TransverseState1 = TransverseState<1>;
using TransverseState2 = TransverseState<2>;

/// Displacement (x0) and momentum kick (p0) per transverse axis.
template <std::size_t D>
struct PhaseSpacePoint {
  std::array<double, D> x0{};
  std::array<double, D> p0{};
};

/// Joint amplitude psi(x1, x2) of a photon pair, one transverse axis per photon.
struct TwoPhotonState {
  static constexpr std::size_t max_axis_size = 64;
  TransverseState<2> state;
};

inline void check_desk_scale(const TwoPhotonState& s) {
  for (const auto& a : s.state.axes)
    if (a.size() > TwoPhotonState::max_axis_size)
      throw ValidationError("two-photon lattice " + std::to_string(a.size()) +
                            " exceeds desk-scale cap of " +
                            std::to_string(TwoPhotonState::max_axis_size) + " points per photon");
}

template <std::size_t D>
double norm_squared(const TransverseState<D>& s) {
  double sum = 0.0;
  for (const auto& v : s.amplitude) sum += std::norm(v);
  return sum * s.cell_measure();
}

/// <a|b> with the lattice measure.
template <std::size_t D>
cplx inner_product(const TransverseState<D>& a, const TransverseState<D>& b) {
  detail::require(a.axes == b.axes, "inner_product: lattice mismatch");
  cplx sum{};
  for (std::size_t i = 0; i < a.amplitude.size(); ++i) sum += std::conj(a.amplitude[i]) * b.amplitude[i];
  return sum * a.cell_measure();
}

template <std::size_t D>
TransverseState<D> normalized(TransverseState<D> s) {
  const double n = norm_squared(s);
  detail::require(std::isfinite(n) && n > 0.0, "transverse state has zero norm");
  const double f = 1.0 / std::sqrt(n);
  for (auto& v : s.amplitude) v *= f;
  return s;
}

/// psi(x) -> psi(-x) along one axis.
template <std::size_t D>
TransverseState<D> reflect_axis(const TransverseState<D>& s, std::size_t axis) {
  TransverseState<D> out = s;
  for (std::size_t f = 0; f < s.amplitude.size(); ++f) {
    auto idx = s.unflatten(f);
    idx[axis] = s.axes[axis].reflect(idx[axis]);
    out.amplitude[f] = s[idx];
  }
  return out;
}

/// psi(x, y) -> psi(-x, -y): rotation by 180 degrees combined with a mirror inversion.
template <std::size_t D>
TransverseState<D> parity_2d(const TransverseState<D>& s) {
  TransverseState<D> out = s;
  for (std::size_t f = 0; f < s.amplitude.size(); ++f) {
    auto idx = s.unflatten(f);
    for (std::size_t a = 0; a < D; ++a) idx[a] = s.axes[a].reflect(idx[a]);
    out.amplitude[f] = s[idx];
  }
  return out;
}

namespace detail {

inline bool lattice_aligned(double shift, double dx) {
  const double cells = shift / dx;
  return std::abs(cells - std::round(cells)) < 1e-9;
}

// psi(x) -> psi(x - shift) along one axis: cyclic index shift when aligned, Fourier
// interpolation otherwise.
template <std::size_t D>
void translate_axis(TransverseState<D>& s, std::size_t axis, double shift) {
  if (shift == 0.0) return;
  const Axis& ax = s.axes[axis];
  const std::size_t n = ax.size();
  const std::size_t stride = s.stride(axis);
  const std::size_t outer = s.amplitude.size() / (n * stride);
  std::vector<cplx> line(n);
  if (lattice_aligned(shift, ax.spacing())) {
    const long cells = std::lround(shift / ax.spacing());
    const long nl = static_cast<long>(n);
    for (std::size_t o = 0; o < outer; ++o)
      for (std::size_t in = 0; in < stride; ++in) {
        const std::size_t base = o * n * stride + in;
        for (std::size_t i = 0; i < n; ++i) line[i] = s.amplitude[base + i * stride];
        for (std::size_t i = 0; i < n; ++i) {
          const long src = ((static_cast<long>(i) - cells) % nl + nl) % nl;
          s.amplitude[base + i * stride] = line[static_cast<std::size_t>(src)];
        }
      }
    return;
  }
  s.interpolated = true;
  fft::BatchedPlan fwd({static_cast<int>(n)}, 1, fft::Direction::forward);
  fft::BatchedPlan bwd({static_cast<int>(n)}, 1, fft::Direction::backward);
  std::vector<cplx> ramp(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double k = 2.0 * std::numbers::pi * static_cast<double>(fft_index(j, n)) / ax.length();
    ramp[j] = std::polar(1.0 / static_cast<double>(n), -k * shift);
  }
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t in = 0; in < stride; ++in) {
      const std::size_t base = o * n * stride + in;
      for (std::size_t i = 0; i < n; ++i) line[i] = s.amplitude[base + i * stride];
      fwd.execute(line);
      for (std::size_t j = 0; j < n; ++j) line[j] *= ramp[j];
      bwd.execute(line);
      for (std::size_t i = 0; i < n; ++i) s.amplitude[base + i * stride] = line[i];
    }
}

template <std::size_t D>
void tilt_axis(TransverseState<D>& s, std::size_t axis, double p0, double direction) {
  if (p0 == 0.0) return;
  const double hbar = s.units.hbar();
  for (std::size_t f = 0; f < s.amplitude.size(); ++f) {
    const auto idx = s.unflatten(f);
    s.amplitude[f] *= std::polar(1.0, direction * p0 * s.axes[axis].x(idx[axis]) / hbar);
  }
}

}  // namespace detail

/// psi(x) -> exp(i p0 x / hbar) psi(x - x0) along a single axis.
template <std::size_t D>
TransverseState<D> displace_axis(const TransverseState<D>& s, std::size_t axis, double x0, double p0) {
  TransverseState<D> out = s;
  detail::translate_axis(out, axis, x0);
  detail::tilt_axis(out, axis, p0, +1.0);
  return out;
}

/// Exact inverse of displace_axis.
template <std::size_t D>
TransverseState<D> undisplace_axis(const TransverseState<D>& s, std::size_t axis, double x0, double p0) {
  TransverseState<D> out = s;
  detail::tilt_axis(out, axis, p0, -1.0);
  detail::translate_axis(out, axis, -x0);
  return out;
}

/// Phase-space displacement D(pt): psi(x) -> exp(i p0.x / hbar) psi(x - x0).
template <std::size_t D>
TransverseState<D> displace(const TransverseState<D>& s, const PhaseSpacePoint<D>& pt) {
  TransverseState<D> out = s;
  for (std::size_t a = 0; a < D; ++a) {
    detail::translate_axis(out, a, pt.x0[a]);
    detail::tilt_axis(out, a, pt.p0[a], +1.0);
  }
  return out;
}

/// D(pt)^-1, including the interpolated case.
template <std::size_t D>
TransverseState<D> displace_inverse(const TransverseState<D>& s, const PhaseSpacePoint<D>& pt) {
  TransverseState<D> out = s;
  for (std::size_t a = 0; a < D; ++a) {
    detail::tilt_axis(out, a, pt.p0[a], -1.0);
    detail::translate_axis(out, a, -pt.x0[a]);
  }
  return out;
}

}  // namespace pwf
