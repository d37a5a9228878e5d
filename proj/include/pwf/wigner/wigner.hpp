#pragma once

// Transverse Wigner function
//   W(x, p) = (pi hbar)^-D  integral psi^*(x + xi) psi(x - xi) exp(2 i p.xi / hbar) d^D xi
// evaluated on the state lattice: xi runs over lattice offsets, the xi-sum is a DFT,
// and the momentum samples are p_j = j pi hbar / L for j = -n/2 .. n/2 - 1.
// The amplitude is taken to vanish outside the sampling window, so x +/- xi never
// wraps around the lattice.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "pwf/fft.hpp"
#include "pwf/wigner/lattice.hpp"

namespace pwf {

template <std::size_t D>
struct WignerGrid {
  std::array<Axis, D> axes;
  double hbar = 1.0;
  /// Values indexed (x_1..x_D, p_1..p_D), row-major.
  std::vector<double> values;
  /// Largest |Im W| / max |W| seen before the imaginary part was dropped.
  double imag_residue = 0.0;

  std::size_t points_per_half() const {
    std::size_t n = 1;
    for (const auto& a : axes) n *= a.size();
    return n;
  }

  double x(std::size_t axis, std::size_t i) const { return axes[axis].x(i); }
  double momentum_spacing(std::size_t axis) const {
    return std::numbers::pi * hbar / axes[axis].length();
  }
  double p(std::size_t axis, std::size_t j) const {
    return (static_cast<double>(j) - static_cast<double>(axes[axis].size() / 2)) * momentum_spacing(axis);
  }

  std::size_t flat(const std::array<std::size_t, D>& ix, const std::array<std::size_t, D>& ip) const {
    std::size_t f = 0;
    for (std::size_t a = 0; a < D; ++a) f = f * axes[a].size() + ix[a];
    for (std::size_t a = 0; a < D; ++a) f = f * axes[a].size() + ip[a];
    return f;
  }

  double at(const std::array<std::size_t, D>& ix, const std::array<std::size_t, D>& ip) const {
    return values[flat(ix, ip)];
  }
};

using WignerGrid1 = WignerGrid<1>;
using WignerGrid2 = WignerGrid<2>;

/// Realness is asserted: throws NumericalError if the imaginary residue exceeds
/// `imag_tolerance` relative to max |W|. The state is normalized first.
template <std::size_t D>
WignerGrid<D> wigner_transform(const TransverseState<D>& input, double imag_tolerance = 1e-12) {
  const TransverseState<D> s = normalized(input);
  const std::size_t total = s.total_size();

  WignerGrid<D> w;
  w.axes = s.axes;
  w.hbar = s.units.hbar();
  w.values.assign(total * total, 0.0);

  std::vector<int> shape(D);
  for (std::size_t a = 0; a < D; ++a) shape[a] = static_cast<int>(s.axes[a].size());

  // One batch per index of the first axis: kernels for every remaining x position.
  const std::size_t n0 = s.axes[0].size();
  const std::size_t batch = total / n0;
  fft::BatchedPlan plan(shape, static_cast<int>(batch), fft::Direction::backward);
  std::vector<cplx> kernels(batch * total);

  const double prefactor = s.cell_measure() / std::pow(std::numbers::pi * w.hbar, static_cast<double>(D));
  double max_re = 0.0, max_im = 0.0;

  for (std::size_t i0 = 0; i0 < n0; ++i0) {
    for (std::size_t b = 0; b < batch; ++b) {
      const auto ix = s.unflatten(i0 * batch + b);
      cplx* ker = kernels.data() + b * total;
      for (std::size_t m = 0; m < total; ++m) {
        const auto mi = s.unflatten(m);
        std::array<std::size_t, D> plus{}, minus{};
        bool inside = true;
        for (std::size_t a = 0; a < D && inside; ++a) {
          const long n = static_cast<long>(s.axes[a].size());
          const long off = fft_index(mi[a], s.axes[a].size());
          const long hi = static_cast<long>(ix[a]) + off;
          const long lo = static_cast<long>(ix[a]) - off;
          inside = hi >= 0 && hi < n && lo >= 0 && lo < n;
          plus[a] = static_cast<std::size_t>(hi);
          minus[a] = static_cast<std::size_t>(lo);
        }
        ker[m] = inside ? std::conj(s[plus]) * s[minus] : cplx{};
      }
    }
    plan.execute(kernels);
    for (std::size_t b = 0; b < batch; ++b) {
      const auto ix = s.unflatten(i0 * batch + b);
      const cplx* ker = kernels.data() + b * total;
      for (std::size_t j = 0; j < total; ++j) {
        const auto ji = s.unflatten(j);
        std::array<std::size_t, D> ip{};
        for (std::size_t a = 0; a < D; ++a)
          ip[a] = static_cast<std::size_t>(fft_index(ji[a], s.axes[a].size()) +
                                           static_cast<long>(s.axes[a].size() / 2));
        const cplx v = prefactor * ker[j];
        max_re = std::max(max_re, std::abs(v.real()));
        max_im = std::max(max_im, std::abs(v.imag()));
        w.values[w.flat(ix, ip)] = v.real();
      }
    }
  }
  w.imag_residue = max_re > 0.0 ? max_im / max_re : max_im;
  if (w.imag_residue > imag_tolerance)
    throw NumericalError("wigner_transform: imaginary residue " + std::to_string(w.imag_residue) +
                         " exceeds tolerance");
  return w;
}

inline WignerGrid1 wigner_1d(const TransverseState1& s) { return wigner_transform(s); }
inline WignerGrid2 wigner_2d(const TransverseState2& s) { return wigner_transform(s); }

/// W at an arbitrary (x, p) for a 1D state by direct summation over xi = m dx, with the
/// amplitude between lattice sites taken from its trigonometric interpolant.
inline double wigner_at(const TransverseState1& input, double x, double p) {
  const auto s = normalized(input);
  const Axis& ax = s.axes[0];
  const std::size_t n = ax.size();
  const double dx = ax.spacing();
  const double hbar = s.units.hbar();

  std::vector<cplx> coef(s.amplitude);
  fft::BatchedPlan(std::vector<int>{static_cast<int>(n)}, 1, fft::Direction::forward).execute(coef);

  // u is a fractional lattice index; the Nyquist term is split symmetrically.
  auto interp = [&](double u) -> cplx {
    if (u < -1e-9 || u > static_cast<double>(n - 1) + 1e-9) return {};
    const double nearest = std::round(u);
    if (std::abs(u - nearest) < 1e-12) return s.amplitude[static_cast<std::size_t>(nearest)];
    cplx sum{};
    for (std::size_t j = 0; j < n; ++j) {
      const long k = fft_index(j, n);
      const double arg = 2.0 * std::numbers::pi * static_cast<double>(k) * u / static_cast<double>(n);
      if (2 * static_cast<std::size_t>(std::abs(k)) == n)
        sum += coef[j] * std::cos(arg);
      else
        sum += coef[j] * std::polar(1.0, arg);
    }
    return sum / static_cast<double>(n);
  };

  const double u0 = x / dx + static_cast<double>(ax.origin());
  const long half = static_cast<long>(n / 2);
  cplx sum{};
  for (long m = -half; m < half; ++m) {
    const double md = static_cast<double>(m);
    sum += std::conj(interp(u0 + md)) * interp(u0 - md) * std::polar(1.0, 2.0 * p * md * dx / hbar);
  }
  return (sum * dx / (std::numbers::pi * hbar)).real();
}

/// integral W dp: one value per x lattice site (row-major).
template <std::size_t D>
std::vector<double> position_marginal(const WignerGrid<D>& w) {
  const std::size_t half = w.points_per_half();
  double dp = 1.0;
  for (std::size_t a = 0; a < D; ++a) dp *= w.momentum_spacing(a);
  std::vector<double> out(half, 0.0);
  for (std::size_t x = 0; x < half; ++x) {
    double sum = 0.0;
    for (std::size_t p = 0; p < half; ++p) sum += w.values[x * half + p];
    out[x] = sum * dp;
  }
  return out;
}

/// integral W dx: one value per p lattice point (row-major).
template <std::size_t D>
std::vector<double> momentum_marginal(const WignerGrid<D>& w) {
  const std::size_t half = w.points_per_half();
  double dx = 1.0;
  for (std::size_t a = 0; a < D; ++a) dx *= w.axes[a].spacing();
  std::vector<double> out(half, 0.0);
  for (std::size_t x = 0; x < half; ++x)
    for (std::size_t p = 0; p < half; ++p) out[p] += w.values[x * half + p];
  for (auto& v : out) v *= dx;
  return out;
}

/// integral W dx dp over the whole grid.
template <std::size_t D>
double total_integral(const WignerGrid<D>& w) {
  double sum = 0.0;
  for (double v : w.values) sum += v;
  double cell = 1.0;
  for (std::size_t a = 0; a < D; ++a) cell *= w.axes[a].spacing() * w.momentum_spacing(a);
  return sum * cell;
}

}  // namespace pwf
