#pragma once

// Time evolution of the photon wave function. The main path is exact per Fourier mode
// (phase rotation in the helicity basis); the real-field RK4 stepper is an independent
// check that integrates the source-free Maxwell equations for (E, B) directly.

#include <cmath>
#include <algorithm>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pwf/fields.hpp"

namespace pwf {

/// Orthonormal complex triad for one nonzero wavevector: khat x e_plus = -i e_plus,
/// khat x e_minus = +i e_minus.
struct HelicityTriad {
  Vec3 khat;
  CVec3 e_plus;
  CVec3 e_minus;
};

/// e1 = normalize(a x khat) with a = xhat unless |khat.xhat| > 0.9 (then yhat),
/// e2 = khat x e1, e_pm = (e1 +/- i e2)/sqrt(2). Empty for k = 0.
inline std::optional<HelicityTriad> helicity_triad(const Vec3& k) {
  const double kn = vec::norm(k);
  if (kn == 0.0) return std::nullopt;
  const Vec3 khat{k[0] / kn, k[1] / kn, k[2] / kn};
  const Vec3 a = std::abs(khat[0]) > 0.9 ? Vec3{0.0, 1.0, 0.0} : Vec3{1.0, 0.0, 0.0};
  Vec3 e1 = vec::cross(a, khat);
  const double n1 = vec::norm(e1);
  for (auto& x : e1) x /= n1;
  const Vec3 e2 = vec::cross(khat, e1);
  const double r = std::numbers::sqrt2 / 2.0;
  HelicityTriad t{khat, {}, {}};
  for (int c = 0; c < 3; ++c) {
    t.e_plus[c] = r * cplx(e1[c], e2[c]);
    t.e_minus[c] = r * cplx(e1[c], -e2[c]);
  }
  return t;
}

/// Helicity triads for every mode of a grid, in storage order.
class HelicityBasis {
 public:
  explicit HelicityBasis(const Grid3& g) : grid_(g), triads_(g.size()) {
    for_each_site(g, [&](std::size_t s, std::size_t i, std::size_t j, std::size_t k) {
      triads_[s] = helicity_triad(g.wavevector(i, j, k));
    });
  }

  const Grid3& grid() const { return grid_; }
  bool present(std::size_t site) const { return triads_[site].has_value(); }
  const HelicityTriad& operator[](std::size_t site) const { return *triads_[site]; }

 private:
  Grid3 grid_;
  std::vector<std::optional<HelicityTriad>> triads_;
};

inline HelicityBasis helicity_basis(const Grid3& g) { return HelicityBasis(g); }

/// Exact evolution of a momentum-space field by t. The e_pm amplitudes rotate by
/// exp(-/+ i sign(h) c|k| t); longitudinal amplitudes and the k = 0 mode are frozen.
inline ComplexVectorField evolve_modes(const ComplexVectorField& psi_k, double t,
                                       const HelicityBasis& basis) {
  detail::require(psi_k.space == Space::momentum, "evolve_modes: requires a momentum-space field");
  detail::require(std::isfinite(t), "evolve_modes: t must be finite");
  detail::require(basis.grid() == psi_k.grid, "evolve_modes: basis grid mismatch");
  ComplexVectorField out = psi_k;
  out.time = psi_k.time + t;
  if (t == 0.0) return out;
  const auto& g = psi_k.grid;
  const double omega_sign = sign(psi_k.helicity) * psi_k.units.c() * t;
  for_each_site(g, [&](std::size_t s, std::size_t i, std::size_t j, std::size_t k) {
    if (!basis.present(s)) return;
    const auto& tri = basis[s];
    const auto psi = psi_k.at(s);
    const double phase = omega_sign * vec::norm(g.wavevector(i, j, k));
    const cplx rot = std::polar(1.0, -phase);
    const cplx a_plus = vec::hdot(tri.e_plus, psi) * rot;
    const cplx a_minus = vec::hdot(tri.e_minus, psi) * std::conj(rot);
    const cplx a_long = vec::dot(tri.khat, psi);
    CVec3 v;
    for (int c = 0; c < 3; ++c)
      v[c] = a_plus * tri.e_plus[c] + a_minus * tri.e_minus[c] + a_long * tri.khat[c];
    out.set(s, v);
  });
  return out;
}

/// Solves i d/dt psi = sign(h) c curl psi exactly for a coordinate-space field.
/// t may be negative. t == 0 returns the input unchanged.
inline ComplexVectorField evolve_spectral(const ComplexVectorField& psi0, double t) {
  detail::require(psi0.space == Space::coordinate, "evolve_spectral: requires a coordinate-space field");
  detail::require(std::isfinite(t), "evolve_spectral: t must be finite");
  if (t == 0.0) return psi0;
  const HelicityBasis basis(psi0.grid);
  return to_coordinate(evolve_modes(to_momentum(psi0), t, basis));
}

/// integral psi^* . psi d^3r as a lattice sum.
inline double energy(const ComplexVectorField& psi) {
  detail::require(psi.space == Space::coordinate, "energy: requires a coordinate-space field");
  double sum = 0.0;
  for (const auto& v : psi.data) sum += std::norm(v);
  return sum * psi.grid.cell_volume();
}

/// integral (E.E + B.B)/2 d^3r as a lattice sum.
inline double field_energy(const RealFieldPair& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < f.e.size(); ++i) sum += f.e[i] * f.e[i] + f.b[i] * f.b[i];
  return 0.5 * sum * f.grid.cell_volume();
}

using WarningSink = std::function<void(std::string_view)>;

inline void default_warning(std::string_view msg) { std::clog << "warning: " << msg << '\n'; }

enum class StepMethod { rk4 };

struct StepperConfig {
  double dt = 1e-3;
  StepMethod method = StepMethod::rk4;
  /// Longitudinal content above this fraction of the field is reported before being removed.
  double longitudinal_tolerance = 1e-12;
  WarningSink warn = default_warning;

  /// Number of equal steps used to cover |t|; the last step is never longer than dt.
  std::size_t steps_for(double t) const {
    const double n = std::ceil(std::abs(t) / dt * (1.0 - 1e-12));
    return static_cast<std::size_t>(std::max(n, 0.0));
  }
};

namespace detail {

// Removes the longitudinal content of a real 3-component field at k != 0 and returns the
// removed fraction. The uniform k = 0 part is static under the curl equations and is kept.
inline double strip_longitudinal(const Grid3& g, std::vector<double>& f) {
  ComplexVectorField c(g, Space::coordinate);
  for (std::size_t i = 0; i < f.size(); ++i) c.data[i] = f[i];
  const auto hat = to_momentum(c);
  auto split = transverse_project(hat);
  split.transverse.set(0, hat.at(0));
  split.longitudinal.set(0, {});
  double lon = 0.0, total = 0.0;
  for (std::size_t i = 0; i < c.data.size(); ++i) {
    lon += std::norm(split.longitudinal.data[i]);
    total += std::norm(hat.data[i]);
  }
  auto back = to_coordinate(split.transverse);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = back.data[i].real();
  return total > 0.0 ? std::sqrt(lon / total) : 0.0;
}

}  // namespace detail

/// RK4 integration of dE/dt = c curl B, dB/dt = -c curl E with spectral curls.
/// Longitudinal parts of the initial data are projected out (with a warning).
inline RealFieldPair evolve_maxwell_real(const RealFieldPair& fields0, double t,
                                         const StepperConfig& cfg) {
  detail::require(std::isfinite(cfg.dt) && cfg.dt > 0.0, "evolve_maxwell_real: dt must be positive");
  detail::require(std::isfinite(t), "evolve_maxwell_real: t must be finite");
  detail::require(fields0.e.size() == 3 * fields0.sites() && fields0.b.size() == 3 * fields0.sites(),
                  "evolve_maxwell_real: field size does not match grid");

  RealFieldPair y = fields0;
  const double fe = detail::strip_longitudinal(y.grid, y.e);
  const double fb = detail::strip_longitudinal(y.grid, y.b);
  if ((fe > cfg.longitudinal_tolerance || fb > cfg.longitudinal_tolerance) && cfg.warn)
    cfg.warn("evolve_maxwell_real: longitudinal content removed (E fraction " + std::to_string(fe) +
             ", B fraction " + std::to_string(fb) + ")");

  const std::size_t steps = cfg.steps_for(t);
  if (steps == 0) return y;
  const double h = t / static_cast<double>(steps);
  const double c = y.units.c();
  const std::size_t n = y.e.size();

  RealCurl curl(y.grid);
  std::vector<double> ke[4], kb[4];
  for (int s = 0; s < 4; ++s) {
    ke[s].resize(n);
    kb[s].resize(n);
  }
  std::vector<double> te(n), tb(n);

  auto rhs = [&](const std::vector<double>& e, const std::vector<double>& b, std::vector<double>& de,
                 std::vector<double>& db) {
    curl.apply(b, de, c);
    curl.apply(e, db, -c);
  };

  for (std::size_t step = 0; step < steps; ++step) {
    rhs(y.e, y.b, ke[0], kb[0]);
    for (std::size_t i = 0; i < n; ++i) {
      te[i] = y.e[i] + 0.5 * h * ke[0][i];
      tb[i] = y.b[i] + 0.5 * h * kb[0][i];
    }
    rhs(te, tb, ke[1], kb[1]);
    for (std::size_t i = 0; i < n; ++i) {
      te[i] = y.e[i] + 0.5 * h * ke[1][i];
      tb[i] = y.b[i] + 0.5 * h * kb[1][i];
    }
    rhs(te, tb, ke[2], kb[2]);
    for (std::size_t i = 0; i < n; ++i) {
      te[i] = y.e[i] + h * ke[2][i];
      tb[i] = y.b[i] + h * kb[2][i];
    }
    rhs(te, tb, ke[3], kb[3]);
    for (std::size_t i = 0; i < n; ++i) {
      y.e[i] += h / 6.0 * (ke[0][i] + 2.0 * ke[1][i] + 2.0 * ke[2][i] + ke[3][i]);
      y.b[i] += h / 6.0 * (kb[0][i] + 2.0 * kb[1][i] + 2.0 * kb[2][i] + kb[3][i]);
    }
  }
  y.time = fields0.time + t;
  return y;
}

/// max over sites of |dE| and |dB| (vector magnitudes), divided by the largest |E| or |B| of `ref`.
inline double max_relative_deviation(const RealFieldPair& ref, const RealFieldPair& other) {
  detail::require(ref.grid == other.grid, "max_relative_deviation: grid mismatch");
  double dev = 0.0, scale = 0.0;
  for (std::size_t s = 0; s < ref.sites(); ++s) {
    const auto e1 = ref.e_at(s), e2 = other.e_at(s), b1 = ref.b_at(s), b2 = other.b_at(s);
    scale = std::max({scale, vec::norm(e1), vec::norm(b1)});
    dev = std::max({dev, vec::norm(Vec3{e1[0] - e2[0], e1[1] - e2[1], e1[2] - e2[2]}),
                    vec::norm(Vec3{b1[0] - b2[0], b1[1] - b2[1], b1[2] - b2[2]})});
  }
  return scale > 0.0 ? dev / scale : dev;
}

}  // namespace pwf
