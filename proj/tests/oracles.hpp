#pragma once

// Independent reference computations used by the unit and acceptance suites. None of
// these call into the FFT-based paths they are used to check.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "pwf/pwf.hpp"

namespace pwf::oracle {

using ScalarFn = std::function<cplx(double)>;

/// Trapezoidal quadrature of (1/(pi hbar)) integral f^*(x+xi) f(x-xi) exp(2 i p xi / hbar) dxi
/// over |xi| <= half_width with step h. Spectrally accurate for smooth decaying f.
inline cplx wigner_quadrature(const ScalarFn& f, double x, double p, double hbar = 1.0,
                              double half_width = 14.0, double h = 0.02) {
  const long n = std::lround(half_width / h);
  cplx sum{};
  for (long m = -n; m <= n; ++m) {
    const double xi = h * static_cast<double>(m);
    sum += std::conj(f(x + xi)) * f(x - xi) * std::polar(1.0, 2.0 * p * xi / hbar);
  }
  return sum * h / (std::numbers::pi * hbar);
}

/// f tabulated at multiples of a fine step h; lattice points x_i must be multiples of h.
/// Evaluates the same trapezoidal Wigner quadrature as wigner_quadrature without
/// re-evaluating f per point.
class TabulatedWigner {
 public:
  TabulatedWigner(const ScalarFn& f, double h, double x_extent, double half_width, double hbar = 1.0)
      : h_(h), hbar_(hbar), half_(std::lround(half_width / h)) {
    offset_ = std::lround(x_extent / h) + half_;
    values_.resize(static_cast<std::size_t>(2 * offset_ + 1));
    for (long m = -offset_; m <= offset_; ++m) values_[static_cast<std::size_t>(m + offset_)] = f(h * static_cast<double>(m));
  }

  cplx operator()(double x, double p) const {
    const long c = std::lround(x / h_);
    cplx sum{};
    const cplx step = std::polar(1.0, 2.0 * p * h_ / hbar_);
    cplx phase = std::polar(1.0, -2.0 * p * h_ * static_cast<double>(half_) / hbar_);
    for (long m = -half_; m <= half_; ++m) {
      sum += std::conj(at(c + m)) * at(c - m) * phase;
      phase *= step;
      if ((m & 63) == 0) phase = std::polar(1.0, 2.0 * p * h_ * static_cast<double>(m + 1) / hbar_);
    }
    return sum * h_ / (std::numbers::pi * hbar_);
  }

 private:
  cplx at(long m) const {
    if (m < -offset_ || m > offset_) return {};
    return values_[static_cast<std::size_t>(m + offset_)];
  }
  double h_, hbar_;
  long half_;
  long offset_ = 0;
  std::vector<cplx> values_;
};

/// Closed form for Hermite-Gauss order n with width w:
/// (-1)^n/(pi hbar) exp(-r2) L_n(2 r2), r2 = x^2/w^2 + w^2 p^2/hbar^2.
inline double wigner_hermite_gauss(unsigned n, double x, double p, double w = 1.0, double hbar = 1.0) {
  const double r2 = x * x / (w * w) + w * w * p * p / (hbar * hbar);
  const double s = (n % 2 == 0) ? 1.0 : -1.0;
  return s / (std::numbers::pi * hbar) * std::exp(-r2) * std::laguerre(n, 2.0 * r2);
}

/// |psi~(p)|^2 with psi~(p) = (2 pi hbar)^-1/2 integral psi(x) exp(-i p x / hbar) dx, by quadrature.
inline double momentum_density_quadrature(const ScalarFn& f, double p, double hbar = 1.0,
                                          double half_width = 14.0, double h = 0.02) {
  const long n = std::lround(half_width / h);
  cplx sum{};
  for (long m = -n; m <= n; ++m) {
    const double x = h * static_cast<double>(m);
    sum += f(x) * std::polar(1.0, -p * x / hbar);
  }
  sum *= h / std::sqrt(2.0 * std::numbers::pi * hbar);
  return std::norm(sum);
}

/// Direct lattice sum of the Wigner kernel at lattice site i and arbitrary p (no FFT),
/// with the amplitude zero outside the window.
inline double wigner_lattice_sum(const TransverseState1& s, std::size_t i, double p) {
  const auto& ax = s.axes[0];
  const long n = static_cast<long>(ax.size());
  cplx sum{};
  for (long m = -n / 2; m < n / 2; ++m) {
    const long a = static_cast<long>(i) + m;
    const long b = static_cast<long>(i) - m;
    if (a < 0 || a >= n || b < 0 || b >= n) continue;
    sum += std::conj(s.amplitude[std::size_t(a)]) * s.amplitude[std::size_t(b)] *
           std::polar(1.0, 2.0 * p * static_cast<double>(m) * ax.spacing() / s.units.hbar());
  }
  return (sum * ax.spacing() / (std::numbers::pi * s.units.hbar())).real();
}

/// Brute-force synthesis psi(r) = (1/V) sum_k f(E_k) amp(k) exp(i(k.r - c|k|t)), summed
/// directly over the occupied modes (no FFT).
inline ComplexVectorField synthesize_direct(const MomentumAmplitude& amp, double t, WeightChoice w) {
  const auto& g = amp.grid();
  const auto& u = amp.units();
  struct Mode {
    Vec3 k;
    CVec3 a;
  };
  std::vector<Mode> modes;
  for_each_site(g, [&](std::size_t s, std::size_t i, std::size_t j, std::size_t k) {
    const auto a = amp.field.at(s);
    if (vec::norm(a) == 0.0) return;
    const Vec3 kv = g.wavevector(i, j, k);
    const double e = u.c() * u.hbar() * vec::norm(kv);
    const double f = w == WeightChoice::unit ? 1.0 : std::sqrt(e);
    const cplx c = f / g.volume() * std::polar(1.0, -e * t / u.hbar());
    modes.push_back({kv, {c * a[0], c * a[1], c * a[2]}});
  });
  ComplexVectorField psi(g, Space::coordinate, amp.field.helicity, u, t);
  for_each_site(g, [&](std::size_t s, std::size_t i, std::size_t j, std::size_t k) {
    const Vec3 r{g.coordinate(0, i), g.coordinate(1, j), g.coordinate(2, k)};
    CVec3 v{};
    for (const auto& m : modes) {
      const cplx ph = std::polar(1.0, vec::dot(m.k, r));
      for (int c = 0; c < 3; ++c) v[c] += m.a[c] * ph;
    }
    psi.set(s, v);
  });
  return psi;
}

/// Least-squares fit y = slope * x + intercept; residual is the largest |y - fit|.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
};

inline LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LinearFit f;
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / n;
  for (std::size_t i = 0; i < x.size(); ++i)
    f.max_residual = std::max(f.max_residual, std::abs(y[i] - (f.slope * x[i] + f.intercept)));
  return f;
}

}  // namespace pwf::oracle
