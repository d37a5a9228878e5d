#pragma once

// Joint Wigner function of a photon pair and the coincidence signal of two
// parity-inverting interferometers, one per photon.

#include <cmath>
#include <numbers>

#include "pwf/wigner/lattice.hpp"
#include "pwf/wigner/wigner.hpp"

namespace pwf {

/// W(x1, p1, x2, p2) with one xi per photon. Values indexed (x1, x2, p1, p2).
inline WignerGrid2 joint_wigner_two_photon(const TwoPhotonState& s) {
  check_desk_scale(s);
  return wigner_transform(s.state);
}

struct CoincidenceResult {
  double parity_1 = 0.0;        // <D1 P1 D1^-1>
  double parity_2 = 0.0;        // <D2 P2 D2^-1>
  double parity_product = 0.0;  // <D1 P1 D1^-1 (x) D2 P2 D2^-1>
  double rate = 0.0;            // <(1 + P1')(1 + P2')>/4, both bright ports click
  double joint_wigner = 0.0;    // parity_product / (pi hbar)^2
};

inline CoincidenceResult two_photon_coincidence_rate(const TwoPhotonState& s, const PhaseSpacePoint<1>& pt1,
                                                     const PhaseSpacePoint<1>& pt2) {
  check_desk_scale(s);
  const auto psi = normalized(s.state);
  auto phi = undisplace_axis(psi, 0, pt1.x0[0], pt1.p0[0]);
  phi = undisplace_axis(phi, 1, pt2.x0[0], pt2.p0[0]);
  const auto p1 = reflect_axis(phi, 0);
  const auto p2 = reflect_axis(phi, 1);
  const auto p12 = reflect_axis(p1, 1);
  CoincidenceResult r;
  r.parity_1 = inner_product(phi, p1).real();
  r.parity_2 = inner_product(phi, p2).real();
  r.parity_product = inner_product(phi, p12).real();
  r.rate = 0.25 * (1.0 + r.parity_1 + r.parity_2 + r.parity_product);
  const double scale = std::numbers::pi * psi.units.hbar();
  r.joint_wigner = r.parity_product / (scale * scale);
  return r;
}

}  // namespace pwf
