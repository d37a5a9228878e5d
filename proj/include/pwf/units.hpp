#pragma once

#include <cmath>
#include <string>

#include "pwf/errors.hpp"

namespace pwf {

/// Action scale and speed of light. Gaussian-unit field semantics; defaults hbar = c = 1.
class Units {
 public:
  Units() = default;
  Units(double hbar, double c) : hbar_(hbar), c_(c) {
    detail::require(std::isfinite(hbar) && hbar > 0.0, "Units: hbar must be positive");
    detail::require(std::isfinite(c) && c > 0.0, "Units: c must be positive");
  }

  double hbar() const { return hbar_; }
  double c() const { return c_; }

  friend bool operator==(const Units&, const Units&) = default;

 private:
  double hbar_ = 1.0;
  double c_ = 1.0;
};

/// Photon handedness. Selects the sign in (E +/- iB)/sqrt(2) and in the evolution law.
enum class Helicity : int { positive = 1, negative = -1 };

constexpr double sign(Helicity h) { return h == Helicity::positive ? 1.0 : -1.0; }

constexpr Helicity flipped(Helicity h) {
  return h == Helicity::positive ? Helicity::negative : Helicity::positive;
}

inline Helicity helicity_from_sign(int s) {
  if (s == 1) return Helicity::positive;
  if (s == -1) return Helicity::negative;
  throw ValidationError("helicity must be +1 or -1, got " + std::to_string(s));
}

enum class Space { coordinate, momentum };

inline const char* to_string(Space s) { return s == Space::coordinate ? "coordinate" : "momentum"; }

inline Space space_from_string(const std::string& s) {
  if (s == "coordinate") return Space::coordinate;
  if (s == "momentum") return Space::momentum;
  throw ValidationError("unknown space '" + s + "'");
}

}  // namespace pwf
