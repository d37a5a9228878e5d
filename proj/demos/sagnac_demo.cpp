// Predicts the count-rate map of a parity-inverting interferometer for the first odd
// Hermite-Gauss mode and prints it next to the Wigner function it encodes.

#include <cstdio>

#include "pwf/pwf.hpp"

int main() {
  const pwf::Axis axis(128, 20.0);
  const auto mode = pwf::hermite_gauss_1d(axis, 1, 1.0);
  const auto w = pwf::wigner_1d(mode);

  std::printf("%8s %8s %10s %12s %12s\n", "x0", "p0", "rate", "W(rate)", "W(fft)");
  for (std::size_t i = 60; i <= 68; i += 2) {
    const std::size_t j = 64;
    pwf::PhaseSpacePoint<1> pt{{axis.x(i)}, {w.p(0, j)}};
    const double r = pwf::sagnac_count_rate(mode, pt);
    std::printf("%8.3f %8.3f %10.6f %12.8f %12.8f\n", pt.x0[0], pt.p0[0], r,
                pwf::wigner_from_rate<1>(r, 1.0), w.at({i}, {j}));
  }
}
