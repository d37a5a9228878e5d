#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "pwf/errors.hpp"
#include "pwf/fft.hpp"
#include "pwf/grid.hpp"
#include "pwf/units.hpp"

namespace pwf {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;
using CVec3 = std::array<cplx, 3>;

/// Photon wave function sampled on a Grid3: three complex components per site,
/// stored component-major (all x, then all y, then all z), each plane row-major.
struct ComplexVectorField {
  Grid3 grid;
  Units units;
  double time = 0.0;
  Helicity helicity = Helicity::positive;
  Space space = Space::coordinate;
  std::vector<cplx> data;

  ComplexVectorField() = default;
  ComplexVectorField(const Grid3& g, Space s, Helicity h = Helicity::positive, Units u = {},
                     double t = 0.0)
      : grid(g), units(u), time(t), helicity(h), space(s), data(3 * g.size()) {}

  std::size_t sites() const { return grid.size(); }

  std::span<cplx> component(int c) { return {data.data() + c * sites(), sites()}; }
  std::span<const cplx> component(int c) const { return {data.data() + c * sites(), sites()}; }

  CVec3 at(std::size_t site) const {
    const auto n = sites();
    return {data[site], data[n + site], data[2 * n + site]};
  }
  void set(std::size_t site, const CVec3& v) {
    const auto n = sites();
    data[site] = v[0];
    data[n + site] = v[1];
    data[2 * n + site] = v[2];
  }
};

/// Real (E, B) pair, each component-major like ComplexVectorField.
struct RealFieldPair {
  Grid3 grid;
  Units units;
  double time = 0.0;
  std::vector<double> e;
  std::vector<double> b;

  RealFieldPair() = default;
  RealFieldPair(const Grid3& g, Units u = {}, double t = 0.0)
      : grid(g), units(u), time(t), e(3 * g.size()), b(3 * g.size()) {}

  std::size_t sites() const { return grid.size(); }
  Vec3 e_at(std::size_t s) const { return {e[s], e[sites() + s], e[2 * sites() + s]}; }
  Vec3 b_at(std::size_t s) const { return {b[s], b[sites() + s], b[2 * sites() + s]}; }
};

// Small vector algebra used by the spectral kernels.
namespace vec {

template <class T, class U>
auto dot(const std::array<T, 3>& a, const std::array<U, 3>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class T, class U>
auto cross(const std::array<T, 3>& a, const std::array<U, 3>& b) {
  using R = decltype(a[0] * b[0]);
  return std::array<R, 3>{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                          a[0] * b[1] - a[1] * b[0]};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline double norm2(const CVec3& a) { return std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]); }

inline double norm(const CVec3& a) { return std::sqrt(norm2(a)); }

/// Hermitian inner product a^* . b
inline cplx hdot(const CVec3& a, const CVec3& b) {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1] + std::conj(a[2]) * b[2];
}

}  // namespace vec

inline std::vector<int> fft_shape(const Grid3& g) {
  return {static_cast<int>(g.dim(0)), static_cast<int>(g.dim(1)), static_cast<int>(g.dim(2))};
}

/// Forward transform r -> k with kernel exp(-i k.r), no normalization.
inline ComplexVectorField to_momentum(const ComplexVectorField& psi) {
  detail::require(psi.space == Space::coordinate, "to_momentum: field is already in momentum space");
  ComplexVectorField out = psi;
  out.space = Space::momentum;
  fft::BatchedPlan plan(fft_shape(psi.grid), 3, fft::Direction::forward);
  plan.execute(out.data);
  return out;
}

/// Inverse transform k -> r with kernel exp(+i k.r) and 1/N normalization.
inline ComplexVectorField to_coordinate(const ComplexVectorField& psi_k) {
  detail::require(psi_k.space == Space::momentum, "to_coordinate: field is already in coordinate space");
  ComplexVectorField out = psi_k;
  out.space = Space::coordinate;
  fft::BatchedPlan plan(fft_shape(psi_k.grid), 3, fft::Direction::backward);
  plan.execute(out.data);
  const double inv_n = 1.0 / static_cast<double>(psi_k.grid.size());
  for (auto& v : out.data) v *= inv_n;
  return out;
}

/// Largest per-site vector magnitude.
inline double max_magnitude(const ComplexVectorField& f) {
  double m = 0.0;
  for (std::size_t s = 0; s < f.sites(); ++s) m = std::max(m, vec::norm(f.at(s)));
  return m;
}

/// max over sites of |a - b| (vector magnitude).
inline double max_difference(const ComplexVectorField& a, const ComplexVectorField& b) {
  detail::require(a.grid == b.grid, "max_difference: grid mismatch");
  double m = 0.0;
  for (std::size_t s = 0; s < a.sites(); ++s) {
    const auto x = a.at(s);
    const auto y = b.at(s);
    m = std::max(m, vec::norm(CVec3{x[0] - y[0], x[1] - y[1], x[2] - y[2]}));
  }
  return m;
}

}  // namespace pwf
