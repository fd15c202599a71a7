#pragma once

namespace stmas {

/// Reduced Wigner element d^2_00, the rank-2 Legendre polynomial in cos(chi).
double d2_00(double chi);
/// Reduced Wigner element d^4_00, the rank-4 Legendre polynomial in cos(chi).
double d4_00(double chi);

struct CharacteristicAngles {
  double magic;           // zero of d2_00
  double rank4_zero_low;  // zeros of d4_00 in (0, pi/2)
  double rank4_zero_high;
};

CharacteristicAngles characteristic_angles();
double magic_angle();

constexpr double kPi = 3.14159265358979323846;
constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

} // namespace stmas
