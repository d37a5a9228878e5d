#pragma once

// State builders: on-shell momentum amplitudes for 3D wave packets, Hermite-Gauss
// transverse modes and correlated two-photon amplitudes.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

#include "pwf/normalization.hpp"
#include "pwf/propagator.hpp"
#include "pwf/wigner/lattice.hpp"

namespace pwf {

/// Polarization assigned to every mode of a packet: a fixed vector projected onto
/// the plane transverse to k, or the helicity eigenvector e_+(k) / e_-(k).
struct Polarization {
  enum class Kind { fixed, helical };
  Kind kind = Kind::fixed;
  CVec3 vector{cplx(1.0), cplx(0.0), cplx(0.0)};
  Helicity handedness = Helicity::positive;

  static Polarization linear(const Vec3& v) { return {Kind::fixed, {v[0], v[1], v[2]}, Helicity::positive}; }
  static Polarization helical(Helicity h) { return {Kind::helical, {}, h}; }
};

inline Polarization polarization_from_string(const std::string& s) {
  if (s == "x") return Polarization::linear({1, 0, 0});
  if (s == "y") return Polarization::linear({0, 1, 0});
  if (s == "z") return Polarization::linear({0, 0, 1});
  if (s == "plus") return Polarization::helical(Helicity::positive);
  if (s == "minus") return Polarization::helical(Helicity::negative);
  throw ValidationError("polarization: expected x, y, z, plus or minus, got '" + s + "'");
}

namespace detail {

inline CVec3 polarize(const Polarization& pol, const Vec3& k) {
  if (pol.kind == Polarization::Kind::helical) {
    const auto tri = helicity_triad(k);
    if (!tri) return {};
    return pol.handedness == Helicity::positive ? tri->e_plus : tri->e_minus;
  }
  const double kn = vec::norm(k);
  if (kn == 0.0) return {};
  const Vec3 khat{k[0] / kn, k[1] / kn, k[2] / kn};
  const cplx along = vec::dot(khat, pol.vector);
  return {pol.vector[0] - along * khat[0], pol.vector[1] - along * khat[1],
          pol.vector[2] - along * khat[2]};
}

inline bool on_nyquist_plane(const Grid3& g, std::size_t i, std::size_t j, std::size_t k) {
  return g.is_nyquist(0, i) || g.is_nyquist(1, j) || g.is_nyquist(2, k);
}

}  // namespace detail

/// Lattice bin holding wavevector k exactly (to 1e-9 of a cell); throws otherwise.
inline std::array<std::size_t, 3> lattice_site_for(const Grid3& g, const Vec3& k) {
  std::array<std::size_t, 3> idx{};
  for (int a = 0; a < 3; ++a) {
    const double m = k[a] * g.length(a) / (2.0 * std::numbers::pi);
    const long mi = std::lround(m);
    const long n = static_cast<long>(g.dim(a));
    if (std::abs(m - static_cast<double>(mi)) > 1e-9)
      throw ValidationError("wavevector component " + std::to_string(k[a]) + " is not on the lattice (axis " +
                            std::to_string(a) + ")");
    if (fft_index(static_cast<std::size_t>(((mi % n) + n) % n), g.dim(a)) != mi)
      throw ValidationError("wavevector component " + std::to_string(k[a]) + " exceeds the lattice band");
    idx[a] = static_cast<std::size_t>(((mi % n) + n) % n);
  }
  return idx;
}

/// Gaussian packet amp(k) = pol_T(k) exp(-|k - k0|^2 / (2 sigma^2)), normalized to unit
/// momentum norm. k = 0 and Nyquist planes are left empty so the packet is band-limited.
inline MomentumAmplitude gaussian_wavepacket(const Grid3& g, const Units& u, const Vec3& k0, double sigma_k,
                                             const Polarization& pol, Helicity h = Helicity::positive) {
  detail::require(std::isfinite(sigma_k) && sigma_k > 0.0, "gaussian_wavepacket: width must be positive");
  MomentumAmplitude amp(g, u, h);
  for_each_site(g, [&](std::size_t s, std::size_t i, std::size_t j, std::size_t k) {
    if (detail::on_nyquist_plane(g, i, j, k)) return;
    const Vec3 kv = g.wavevector(i, j, k);
    const Vec3 d{kv[0] - k0[0], kv[1] - k0[1], kv[2] - k0[2]};
    const double env = std::exp(-vec::dot(d, d) / (2.0 * sigma_k * sigma_k));
    const auto p = detail::polarize(pol, kv);
    amp.field.set(s, {env * p[0], env * p[1], env * p[2]});
  });
  amp.transverse = true;
  if (momentum_norm(amp) == 0.0) throw ValidationError("gaussian_wavepacket: packet has no transverse content");
  return normalized(std::move(amp));
}

/// One occupied mode at wavevector k (must be a lattice point), unit momentum norm.
inline MomentumAmplitude single_mode(const Grid3& g, const Units& u, const Vec3& k, const Polarization& pol,
                                     Helicity h = Helicity::positive) {
  const auto idx = lattice_site_for(g, k);
  const Vec3 kv = g.wavevector(idx[0], idx[1], idx[2]);
  detail::require(vec::norm(kv) > 0.0, "single_mode: k = 0 is not an on-shell photon mode");
  const auto p = detail::polarize(pol, kv);
  const double pn = vec::norm(p);
  const double in = pol.kind == Polarization::Kind::fixed ? vec::norm(pol.vector) : 1.0;
  if (!(pn > 1e-12 * in))
    throw ValidationError("single_mode: polarization is parallel to k (no transverse content)");
  MomentumAmplitude amp(g, u, h);
  amp.field.set(g.index(idx[0], idx[1], idx[2]), p);
  amp.transverse = true;
  return normalized(std::move(amp));
}

/// Random transverse amplitude with independent complex Gaussian coefficients on every
/// mode with 0 < |k| <= k_max, unit momentum norm. Deterministic for a given seed.
inline MomentumAmplitude random_bandlimited(const Grid3& g, const Units& u, double k_max, std::uint64_t seed,
                                            Helicity h = Helicity::positive) {
  detail::require(k_max > 0.0, "random_bandlimited: k_max must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  MomentumAmplitude amp(g, u, h);
  for_each_site(g, [&](std::size_t s, std::size_t i, std::size_t j, std::size_t k) {
    CVec3 v;
    for (auto& c : v) c = cplx(normal(rng), normal(rng));
    const Vec3 kv = g.wavevector(i, j, k);
    const double kn = vec::norm(kv);
    if (kn == 0.0 || kn > k_max || detail::on_nyquist_plane(g, i, j, k)) return;
    amp.field.set(s, v);
  });
  amp = make_transverse(std::move(amp));
  detail::require(momentum_norm(amp) > 0.0, "random_bandlimited: no lattice modes below k_max");
  return normalized(std::move(amp));
}

/// Normalized Hermite-Gauss function of order n with width w:
/// (2^n n! sqrt(pi) w)^-1/2 H_n(x/w) exp(-x^2 / (2 w^2)).
inline double hermite_gauss(unsigned n, double x, double w) {
  const double u = x / w;
  const double norm = 1.0 / std::sqrt(std::pow(2.0, n) * std::tgamma(n + 1.0) * std::sqrt(std::numbers::pi) * w);
  return norm * std::hermite(n, u) * std::exp(-0.5 * u * u);
}

/// HG_n sampled on a centered axis, normalized on the lattice.
inline TransverseState1 hermite_gauss_1d(const Axis& axis, unsigned order, double waist, Units u = {}) {
  detail::require(order <= 4, "hermite_gauss: order must be in 0..4");
  detail::require(waist > 0.0, "hermite_gauss: waist must be positive");
  TransverseState1 s({axis}, u);
  for (std::size_t i = 0; i < axis.size(); ++i) s.amplitude[i] = hermite_gauss(order, axis.x(i), waist);
  return normalized(std::move(s));
}

/// HG_{nx} (x) HG_{ny} on a 2D centered lattice.
inline TransverseState2 hermite_gauss_2d(const std::array<Axis, 2>& axes, unsigned order_x, unsigned order_y,
                                         double waist, Units u = {}) {
  detail::require(order_x <= 4 && order_y <= 4, "hermite_gauss: orders must be in 0..4");
  detail::require(waist > 0.0, "hermite_gauss: waist must be positive");
  TransverseState2 s(axes, u);
  for (std::size_t i = 0; i < axes[0].size(); ++i)
    for (std::size_t j = 0; j < axes[1].size(); ++j)
      s[{i, j}] = hermite_gauss(order_x, axes[0].x(i), waist) * hermite_gauss(order_y, axes[1].x(j), waist);
  return normalized(std::move(s));
}

/// psi(x1, x2) proportional to exp(-(x1^2 + x2^2 - 2 r x1 x2) / (2 w^2 (1 - r^2))).
/// r = 0 is separable; r -> +/-1 approaches perfect position (anti)correlation.
inline TwoPhotonState two_photon_gaussian(const std::array<Axis, 2>& axes, double correlation, double width,
                                          Units u = {}) {
  detail::require(std::abs(correlation) < 1.0, "two_photon_gaussian: |correlation| must be < 1");
  detail::require(width > 0.0, "two_photon_gaussian: width must be positive");
  TwoPhotonState tp{TransverseState2(axes, u)};
  check_desk_scale(tp);
  const double denom = 2.0 * width * width * (1.0 - correlation * correlation);
  for (std::size_t i = 0; i < axes[0].size(); ++i)
    for (std::size_t j = 0; j < axes[1].size(); ++j) {
      const double x1 = axes[0].x(i), x2 = axes[1].x(j);
      tp.state[{i, j}] = std::exp(-(x1 * x1 + x2 * x2 - 2.0 * correlation * x1 * x2) / denom);
    }
  tp.state = normalized(std::move(tp.state));
  return tp;
}

}  // namespace pwf
