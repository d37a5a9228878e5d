#pragma once

// Idealized parity-inverting (out-of-plane Sagnac) interferometer. With 50/50
// recombination and unit visibility the bright-port click probability is
//   R(pt) = (1 + <psi| D(pt) P D(pt)^-1 |psi>) / 2,
// and the bracket equals (pi hbar)^d W(pt), so R - 1/2 is linear in W.

#include <cmath>
#include <numbers>
#include <vector>

#include "pwf/wigner/lattice.hpp"

namespace pwf {

/// <psi| D(pt) P D(pt)^-1 |psi> for a normalized copy of the state.
template <std::size_t D>
double displaced_parity(const TransverseState<D>& state, const PhaseSpacePoint<D>& pt) {
  const auto psi = normalized(state);
  const auto phi = displace_inverse(psi, pt);
  return inner_product(phi, parity_2d(phi)).real();
}

template <std::size_t D>
double sagnac_count_rate(const TransverseState<D>& state, const PhaseSpacePoint<D>& pt) {
  return 0.5 * (1.0 + displaced_parity(state, pt));
}

/// W at pt inferred from a count rate: (2R - 1) / (pi hbar)^d.
template <std::size_t D>
double wigner_from_rate(double rate, double hbar) {
  return (2.0 * rate - 1.0) / std::pow(std::numbers::pi * hbar, static_cast<double>(D));
}

struct SagnacSample {
  double x0 = 0.0;
  double p0 = 0.0;
  double rate = 0.0;
  double derived_w = 0.0;
};

/// Rates on a rectangular (x0, p0) grid along `axis`; other axes stay at the origin.
/// Ranges are inclusive; a count of 1 samples only the lower bound.
template <std::size_t D>
std::vector<SagnacSample> sagnac_scan(const TransverseState<D>& state, std::size_t axis, double x_min,
                                      double x_max, std::size_t nx, double p_min, double p_max,
                                      std::size_t np) {
  detail::require(axis < D, "sagnac_scan: axis out of range");
  detail::require(nx >= 1 && np >= 1, "sagnac_scan: scan needs at least one point per direction");
  const auto psi = normalized(state);
  auto step = [](double lo, double hi, std::size_t n) { return n > 1 ? (hi - lo) / static_cast<double>(n - 1) : 0.0; };
  const double dx = step(x_min, x_max, nx);
  const double dp = step(p_min, p_max, np);
  std::vector<SagnacSample> out;
  out.reserve(nx * np);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < np; ++j) {
      PhaseSpacePoint<D> pt;
      pt.x0[axis] = x_min + dx * static_cast<double>(i);
      pt.p0[axis] = p_min + dp * static_cast<double>(j);
      const double r = sagnac_count_rate(psi, pt);
      out.push_back({pt.x0[axis], pt.p0[axis], r, wigner_from_rate<D>(r, psi.units.hbar())});
    }
  return out;
}

}  // namespace pwf
