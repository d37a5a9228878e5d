#pragma once

// Momentum-space amplitudes, their normalization and on-shell synthesis of the
// coordinate-space wave function.
//
// Lattice conventions: p = hbar k, the momentum cell is (2 pi hbar)^3 / V, so the
// measure (2 pi hbar)^-3 d^3p becomes 1/V per mode. Synthesis uses
//   psi(r, t) = (1/V) sum_k f(E_k) amp(k) exp(i(k.r - c|k| t)),
// the unique lattice constant for which integral |psi|^2 d^3r equals
// (1/V) sum_k f(E_k)^2 |amp(k)|^2 exactly (discrete Parseval).

#include <algorithm>
#include <cmath>
#include <string>

#include "pwf/field.hpp"
#include "pwf/propagator.hpp"

namespace pwf {

enum class WeightChoice { unit, sqrt_energy };

inline const char* to_string(WeightChoice w) { return w == WeightChoice::unit ? "unit" : "sqrt_energy"; }

inline WeightChoice weight_from_string(const std::string& s) {
  if (s == "unit") return WeightChoice::unit;
  if (s == "sqrt_energy") return WeightChoice::sqrt_energy;
  throw ValidationError("unknown weight '" + s + "' (expected unit or sqrt_energy)");
}

/// On-shell amplitude over the wavevector lattice (FFT bin order, component-major).
struct MomentumAmplitude {
  ComplexVectorField field;  // space == momentum
  bool transverse = false;

  MomentumAmplitude() = default;
  explicit MomentumAmplitude(const Grid3& g, Units u = {}, Helicity h = Helicity::positive)
      : field(g, Space::momentum, h, u) {}

  const Grid3& grid() const { return field.grid; }
  const Units& units() const { return field.units; }
};

/// Photon energy c hbar |k| of a mode.
inline double mode_energy(const Grid3& g, const Units& u, std::size_t i, std::size_t j, std::size_t k) {
  return u.c() * u.hbar() * vec::norm(g.wavevector(i, j, k));
}

inline double weight_value(WeightChoice w, double energy) {
  return w == WeightChoice::unit ? 1.0 : std::sqrt(energy);
}

/// (2 pi hbar)^-3 sum |amp|^2 d^3p on the lattice.
inline double momentum_norm(const MomentumAmplitude& amp) {
  double sum = 0.0;
  for (const auto& v : amp.field.data) sum += std::norm(v);
  return sum / amp.grid().volume();
}

/// (2 pi hbar)^-3 sum E(p) |amp|^2 d^3p with E = c|p|.
inline double energy_expectation_momentum(const MomentumAmplitude& amp) {
  const auto& g = amp.grid();
  double sum = 0.0;
  for_each_site(g, [&](std::size_t s, std::size_t i, std::size_t j, std::size_t k) {
    sum += mode_energy(g, amp.units(), i, j, k) * vec::norm2(amp.field.at(s));
  });
  return sum / g.volume();
}

/// Largest |k . amp(k)| relative to the largest |k| |amp(k)|.
inline double transversality_residual(const ComplexVectorField& psi_k) {
  const auto& g = psi_k.grid;
  double num = 0.0, den = 0.0;
  for_each_site(g, [&](std::size_t s, std::size_t i, std::size_t j, std::size_t k) {
    const Vec3 kv = g.wavevector(i, j, k);
    const auto v = psi_k.at(s);
    num = std::max(num, std::abs(vec::dot(kv, v)));
    den = std::max(den, vec::norm(kv) * vec::norm(v));
  });
  return den > 0.0 ? num / den : 0.0;
}

inline double zero_mode_magnitude(const ComplexVectorField& psi_k) { return vec::norm(psi_k.at(0)); }

/// Removes the longitudinal part and the k = 0 mode, and sets the transverse flag.
inline MomentumAmplitude make_transverse(MomentumAmplitude amp) {
  auto split = transverse_project(amp.field);
  amp.field.data = std::move(split.transverse.data);
  amp.transverse = true;
  return amp;
}

/// Scales the amplitude to unit momentum_norm. Rejects the zero amplitude.
inline MomentumAmplitude normalized(MomentumAmplitude amp) {
  const double n = momentum_norm(amp);
  detail::require(n > 0.0, "normalized: zero amplitude cannot be normalized");
  const double s = 1.0 / std::sqrt(n);
  for (auto& v : amp.field.data) v *= s;
  return amp;
}

/// Coordinate-space wave function at time t from an on-shell amplitude.
inline ComplexVectorField synthesize_onshell(const MomentumAmplitude& amp, double t, WeightChoice w) {
  detail::require(amp.field.space == Space::momentum, "synthesize_onshell: amplitude must be momentum-space");
  detail::require(amp.transverse, "synthesize_onshell: amplitude is not flagged transverse");
  detail::require(zero_mode_magnitude(amp.field) == 0.0,
                  "synthesize_onshell: k = 0 amplitude must vanish (E = 0 is off the photon shell)");
  detail::require(std::isfinite(t), "synthesize_onshell: t must be finite");
  const auto& g = amp.grid();
  const auto& u = amp.units();
  ComplexVectorField hat(g, Space::momentum, amp.field.helicity, u, t);
  const double scale = static_cast<double>(g.size()) / g.volume();
  for_each_site(g, [&](std::size_t s, std::size_t i, std::size_t j, std::size_t k) {
    const double e = mode_energy(g, u, i, j, k);
    const cplx factor = scale * weight_value(w, e) * std::polar(1.0, -e * t / u.hbar());
    const auto a = amp.field.at(s);
    hat.set(s, {factor * a[0], factor * a[1], factor * a[2]});
  });
  return to_coordinate(hat);
}

struct RecoveredAmplitude {
  MomentumAmplitude amplitude;
  /// Norm of the k = 0 content that cannot be mapped back (f(0) = 0 or off-shell).
  double dropped_zero_mode = 0.0;
};

/// Inverse of synthesize_onshell: the amplitude that synthesizes `psi` at psi.time.
inline RecoveredAmplitude recover_amplitude(const ComplexVectorField& psi, WeightChoice w) {
  detail::require(psi.space == Space::coordinate, "recover_amplitude: requires a coordinate-space field");
  const auto hat = to_momentum(psi);
  const auto& g = psi.grid;
  const auto& u = psi.units;
  RecoveredAmplitude out{MomentumAmplitude(g, u, psi.helicity), 0.0};
  const double inv_scale = g.volume() / static_cast<double>(g.size());
  for_each_site(g, [&](std::size_t s, std::size_t i, std::size_t j, std::size_t k) {
    const double e = mode_energy(g, u, i, j, k);
    const auto a = hat.at(s);
    if (e == 0.0) {
      out.dropped_zero_mode = vec::norm(a) / static_cast<double>(g.size());
      return;
    }
    const cplx factor = inv_scale / weight_value(w, e) * std::polar(1.0, e * psi.time / u.hbar());
    out.amplitude.field.set(s, {factor * a[0], factor * a[1], factor * a[2]});
  });
  out.amplitude.transverse = transversality_residual(out.amplitude.field) < 1e-12;
  return out;
}

}  // namespace pwf
