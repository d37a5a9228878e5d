#pragma once

// Riemann-Silberstein construction, transverse/longitudinal split and the spectral curl.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "pwf/field.hpp"

namespace pwf {

/// psi = (E + i*sign(h)*B) / sqrt(2), pointwise.
inline ComplexVectorField riemann_silberstein(const RealFieldPair& fields, Helicity h) {
  ComplexVectorField psi(fields.grid, Space::coordinate, h, fields.units, fields.time);
  const double s = sign(h);
  const double r = std::numbers::sqrt2 / 2.0;
  for (std::size_t i = 0; i < psi.data.size(); ++i)
    psi.data[i] = cplx(r * fields.e[i], r * s * fields.b[i]);
  return psi;
}

/// Inverse of riemann_silberstein: E = sqrt(2) Re psi, B = sign(h) sqrt(2) Im psi.
inline RealFieldPair split_real_imag(const ComplexVectorField& psi) {
  detail::require(psi.space == Space::coordinate, "split_real_imag: requires a coordinate-space field");
  RealFieldPair out(psi.grid, psi.units, psi.time);
  const double s = sign(psi.helicity);
  for (std::size_t i = 0; i < psi.data.size(); ++i) {
    out.e[i] = std::numbers::sqrt2 * psi.data[i].real();
    out.b[i] = s * std::numbers::sqrt2 * psi.data[i].imag();
  }
  return out;
}

struct TransverseSplit {
  ComplexVectorField transverse;
  ComplexVectorField longitudinal;
};

/// Per mode: psi_L = khat (khat . psi), psi_T = psi - psi_L. The k = 0 mode goes
/// entirely to psi_L. Both outputs are momentum-space.
inline TransverseSplit transverse_project(const ComplexVectorField& psi_k) {
  detail::require(psi_k.space == Space::momentum, "transverse_project: requires a momentum-space field");
  TransverseSplit out{psi_k, psi_k};
  const auto& g = psi_k.grid;
  for_each_site(g, [&](std::size_t s, std::size_t i, std::size_t j, std::size_t k) {
    const auto psi = psi_k.at(s);
    const Vec3 kv = g.wavevector(i, j, k);
    const double kn = vec::norm(kv);
    if (kn == 0.0) {
      out.transverse.set(s, {});
      return;
    }
    const Vec3 khat{kv[0] / kn, kv[1] / kn, kv[2] / kn};
    const cplx along = vec::dot(khat, psi);
    const CVec3 lon{khat[0] * along, khat[1] * along, khat[2] * along};
    out.longitudinal.set(s, lon);
    out.transverse.set(s, {psi[0] - lon[0], psi[1] - lon[1], psi[2] - lon[2]});
  });
  return out;
}

/// Curl via i k x psi_hat. Accepts either space and returns the result in the input's space.
inline ComplexVectorField curl_spectral(const ComplexVectorField& psi) {
  const bool coordinate = psi.space == Space::coordinate;
  ComplexVectorField hat = coordinate ? to_momentum(psi) : psi;
  const auto& g = hat.grid;
  const cplx i_unit(0.0, 1.0);
  for_each_site(g, [&](std::size_t s, std::size_t i, std::size_t j, std::size_t k) {
    const Vec3 kv = g.wavevector(i, j, k);
    const auto c = vec::cross(kv, hat.at(s));
    hat.set(s, {i_unit * c[0], i_unit * c[1], i_unit * c[2]});
  });
  return coordinate ? to_coordinate(hat) : hat;
}

/// Spectral curl of real three-component fields with cached real-to-complex plans.
/// One instance per grid; not safe to share across threads (owns scratch buffers).
class RealCurl {
 public:
  explicit RealCurl(const Grid3& g)
      : grid_(g), plans_(fft_shape(g), 3), real_(3 * g.size()), spectrum_(3 * plans_.half_size()) {
    const std::size_t nz_half = g.dim(2) / 2 + 1;
    kx_.resize(g.dim(0));
    ky_.resize(g.dim(1));
    kz_.resize(nz_half);
    for (std::size_t i = 0; i < g.dim(0); ++i) kx_[i] = g.wavenumber(0, i);
    for (std::size_t j = 0; j < g.dim(1); ++j) ky_[j] = g.wavenumber(1, j);
    // r2c keeps non-negative z bins only, so the z wavenumber is taken as positive.
    for (std::size_t k = 0; k < nz_half; ++k)
      kz_[k] = 2.0 * std::numbers::pi * static_cast<double>(k) / g.length(2);
  }

  /// out = scale * curl(in); both component-major of length 3 * sites.
  void apply(std::span<const double> in, std::span<double> out, double scale = 1.0) {
    detail::require(in.size() == real_.size() && out.size() == real_.size(), "RealCurl: size mismatch");
    const std::size_t half = plans_.half_size();
    std::copy(in.begin(), in.end(), real_.data());
    plans_.forward(real_, spectrum_);
    const std::size_t ny = grid_.dim(1);
    const std::size_t nzh = kz_.size();
    const double norm = scale / static_cast<double>(grid_.size());
    const cplx iu(0.0, norm);
    for (std::size_t i = 0; i < kx_.size(); ++i)
      for (std::size_t j = 0; j < ny; ++j)
        for (std::size_t k = 0; k < nzh; ++k) {
          const std::size_t s = (i * ny + j) * nzh + k;
          const cplx ax = spectrum_[s], ay = spectrum_[half + s], az = spectrum_[2 * half + s];
          spectrum_[s] = iu * (ky_[j] * az - kz_[k] * ay);
          spectrum_[half + s] = iu * (kz_[k] * ax - kx_[i] * az);
          spectrum_[2 * half + s] = iu * (kx_[i] * ay - ky_[j] * ax);
        }
    plans_.backward(spectrum_, real_);
    std::copy(real_.data(), real_.data() + real_.size(), out.begin());
  }

  const Grid3& grid() const { return grid_; }

 private:
  Grid3 grid_;
  fft::RealPlanPair plans_;
  fft::AlignedBuffer<double> real_;
  fft::AlignedBuffer<cplx> spectrum_;
  std::vector<double> kx_, ky_, kz_;
};

}  // namespace pwf
