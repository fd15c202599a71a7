#include "stmas/rotations.hpp"

#include <cmath>

namespace stmas {

double d2_00(double chi) {
  const double c = std::cos(chi);
  return 0.5 * (3.0 * c * c - 1.0);
}

double d4_00(double chi) {
  const double c2 = std::cos(chi) * std::cos(chi);
  return (35.0 * c2 * c2 - 30.0 * c2 + 3.0) / 8.0;
}

double magic_angle() { return std::acos(1.0 / std::sqrt(3.0)); }

CharacteristicAngles characteristic_angles() {
  // 35 u^2 - 30 u + 3 = 0 with u = cos^2(chi); the larger u is the smaller angle.
  const double disc = std::sqrt(30.0 * 30.0 - 4.0 * 35.0 * 3.0);
  const double u_large = (30.0 + disc) / 70.0;
  // Small root via Vieta to avoid cancellation.
  const double u_small = (3.0 / 35.0) / u_large;
  return {magic_angle(), std::acos(std::sqrt(u_large)), std::acos(std::sqrt(u_small))};
}

} // namespace stmas
