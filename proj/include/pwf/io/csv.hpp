#pragma once

// Plot-ready CSV writers. Metadata goes in leading '#' comment lines.

#include <fstream>
#include <iomanip>
#include <string>
#include <utility>
#include <vector>

#include "pwf/errors.hpp"
#include "pwf/wigner/sagnac.hpp"
#include "pwf/wigner/wigner.hpp"

namespace pwf::io {

using Metadata = std::vector<std::pair<std::string, std::string>>;

namespace detail {
inline std::ofstream open_csv(const std::string& path, const Metadata& meta) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << std::setprecision(17);
  for (const auto& [k, v] : meta) out << "# " << k << "=" << v << '\n';
  return out;
}
}  // namespace detail

/// 1D: x,p,W. 2D: long format with lattice indices, columns named per axis
/// (x1,p1,x2,p2 for photon pairs).
template <std::size_t D>
void write_wigner_csv(const std::string& path, const WignerGrid<D>& w, const Metadata& meta = {}) {
  auto out = detail::open_csv(path, meta);
  if (!out) throw IoError("cannot write '" + path + "'");
  if constexpr (D == 1) {
    out << "x,p,W\n";
    const std::size_t n = w.axes[0].size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out << w.x(0, i) << ',' << w.p(0, j) << ',' << w.at({i}, {j}) << '\n';
  } else {
    static_assert(D == 2, "CSV export supports 1D and 2D grids");
    out << "i_x1,i_p1,i_x2,i_p2,x1,p1,x2,p2,W\n";
    const std::size_t n1 = w.axes[0].size(), n2 = w.axes[1].size();
    for (std::size_t a = 0; a < n1; ++a)
      for (std::size_t b = 0; b < n1; ++b)
        for (std::size_t c = 0; c < n2; ++c)
          for (std::size_t d = 0; d < n2; ++d)
            out << a << ',' << b << ',' << c << ',' << d << ',' << w.x(0, a) << ',' << w.p(0, b) << ','
                << w.x(1, c) << ',' << w.p(1, d) << ',' << w.at({a, c}, {b, d}) << '\n';
  }
  if (!out) throw IoError("write to '" + path + "' failed");
}

inline void write_sagnac_csv(const std::string& path, const std::vector<SagnacSample>& scan,
                             const Metadata& meta = {}) {
  auto out = detail::open_csv(path, meta);
  out << "x0,p0,rate,derived_W\n";
  for (const auto& s : scan) out << s.x0 << ',' << s.p0 << ',' << s.rate << ',' << s.derived_w << '\n';
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace pwf::io
