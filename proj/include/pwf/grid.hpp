#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

#include "pwf/errors.hpp"

namespace pwf {

/// Signed FFT frequency index of bin i on an n-point axis (numpy fftfreq ordering:
/// 0, 1, ..., ceil(n/2)-1, -floor(n/2), ..., -1).
constexpr long fft_index(std::size_t i, std::size_t n) {
  const auto half = static_cast<std::size_t>((n + 1) / 2);
  return i < half ? static_cast<long>(i) : static_cast<long>(i) - static_cast<long>(n);
}

/// Uniform periodic lattice in a box [0, Lx) x [0, Ly) x [0, Lz).
class Grid3 {
 public:
  using Dims = std::array<std::size_t, 3>;
  using Lengths = std::array<double, 3>;

  Grid3() = default;

  Grid3(Dims dims, Lengths lengths) : dims_(dims), lengths_(lengths) {
    for (int a = 0; a < 3; ++a) {
      if (dims[a] < 2)
        throw ValidationError("Grid3: dims[" + std::to_string(a) + "] must be >= 2");
      if (!(std::isfinite(lengths[a]) && lengths[a] > 0.0))
        throw ValidationError("Grid3: lengths[" + std::to_string(a) + "] must be positive");
    }
  }

  const Dims& dims() const { return dims_; }
  const Lengths& lengths() const { return lengths_; }
  std::size_t dim(int axis) const { return dims_[axis]; }
  double length(int axis) const { return lengths_[axis]; }
  double spacing(int axis) const { return lengths_[axis] / static_cast<double>(dims_[axis]); }

  std::size_t size() const { return dims_[0] * dims_[1] * dims_[2]; }
  double volume() const { return lengths_[0] * lengths_[1] * lengths_[2]; }
  double cell_volume() const { return volume() / static_cast<double>(size()); }

  /// Row-major flat index, z fastest.
  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * dims_[1] + j) * dims_[2] + k;
  }

  double coordinate(int axis, std::size_t i) const { return spacing(axis) * static_cast<double>(i); }

  /// Angular wavenumber of FFT bin i along `axis`: 2*pi*m/L.
  double wavenumber(int axis, std::size_t i) const {
    return 2.0 * std::numbers::pi * static_cast<double>(fft_index(i, dims_[axis])) / lengths_[axis];
  }

  std::array<double, 3> wavevector(std::size_t i, std::size_t j, std::size_t k) const {
    return {wavenumber(0, i), wavenumber(1, j), wavenumber(2, k)};
  }

  /// True for bins sitting on the (unpaired) Nyquist frequency of an even-length axis.
  bool is_nyquist(int axis, std::size_t i) const {
    return dims_[axis] % 2 == 0 && i == dims_[axis] / 2;
  }

  friend bool operator==(const Grid3&, const Grid3&) = default;

 private:
  Dims dims_{2, 2, 2};
  Lengths lengths_{1.0, 1.0, 1.0};
};

inline Grid3 make_grid(Grid3::Dims dims, Grid3::Lengths lengths) { return Grid3(dims, lengths); }

/// Calls f(flat, i, j, k) over every lattice site in storage order.
template <class F>
void for_each_site(const Grid3& g, F&& f) {
  std::size_t flat = 0;
  for (std::size_t i = 0; i < g.dim(0); ++i)
    for (std::size_t j = 0; j < g.dim(1); ++j)
      for (std::size_t k = 0; k < g.dim(2); ++k) f(flat++, i, j, k);
}

}  // namespace pwf
