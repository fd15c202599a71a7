#include "stmas/quadrupolar.hpp"

#include "stmas/rotations.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace stmas {

namespace {

// Bracket polynomials with x = a/2 and S(S+1) = b(b+2)/4, each equal to
// (returned integer) / 8.
std::int64_t rank0_bracket_x8(std::int64_t a, std::int64_t b) {
  return a * (b * (b + 2) - 3 * a * a);
}
std::int64_t rank2_bracket_x8(std::int64_t a, std::int64_t b) {
  return a * (8 * b * (b + 2) - 12 * a * a - 12);
}
std::int64_t rank4_bracket_x8(std::int64_t a, std::int64_t b) {
  return a * (18 * b * (b + 2) - 34 * a * a - 20);
}

void require_levels(const SpinSystem &sys, HalfInt m, HalfInt n) {
  if (!sys.has_level(m) || !sys.has_level(n))
    throw std::invalid_argument("level not in the spin's level set");
}

} // namespace

double SecondOrderDecomposition::evaluate(double beta_r, double chi) const {
  return rank0 + rank2 * d2_00(chi) * d2_00(beta_r) + rank4 * d4_00(chi) * d4_00(beta_r);
}

double first_order_shift(const SpinSystem &sys, HalfInt m, HalfInt n, double beta_r, double chi) {
  require_levels(sys, m, n);
  const double mm = m.value();
  const double nn = n.value();
  const double cb = std::cos(beta_r);
  return sys.quadrupole_hz() * (mm * mm - nn * nn) / 4.0 * (3.0 * cb * cb - 1.0) * d2_00(chi);
}

double second_order_shift(const SpinSystem &sys, HalfInt m, HalfInt n, double beta_r, double chi,
                          const SecondOrderWeights &w) {
  require_levels(sys, m, n);
  const double s = sys.spin().value();
  const double ss = s * (s + 1.0);
  const double x = m.value();
  const double y = n.value();
  const double nq = sys.quadrupole_hz();
  const double prefactor = nq * nq / (5040.0 * sys.larmor_hz());

  const double b0 = x * (ss - 3.0 * x * x) - y * (ss - 3.0 * y * y);
  const double b2 = x * (8.0 * ss - 12.0 * x * x - 3.0) - y * (8.0 * ss - 12.0 * y * y - 3.0);
  const double b4 = x * (18.0 * ss - 34.0 * x * x - 5.0) - y * (18.0 * ss - 34.0 * y * y - 5.0);

  return prefactor * (w.rank0 * b0 + w.rank2 * b2 * d2_00(chi) * d2_00(beta_r) +
                      w.rank4 * b4 * d4_00(chi) * d4_00(beta_r));
}

SecondOrderDecomposition second_order_decomposition(const SpinSystem &sys, HalfInt m, HalfInt n) {
  require_levels(sys, m, n);
  const std::int64_t b = sys.spin().twice;
  const double nq = sys.quadrupole_hz();
  const double unit = nq * nq / (5040.0 * sys.larmor_hz()) / 8.0;
  auto diff = [&](auto bracket) {
    return static_cast<double>(bracket(m.twice, b) - bracket(n.twice, b));
  };
  return {-168.0 * diff(rank0_bracket_x8) * unit, -60.0 * diff(rank2_bracket_x8) * unit,
          36.0 * diff(rank4_bracket_x8) * unit};
}

Rational rank4_coefficient(HalfInt spin, HalfInt m, HalfInt n) {
  const std::int64_t b = spin.twice;
  return Rational(36 * (rank4_bracket_x8(m.twice, b) - rank4_bracket_x8(n.twice, b)), 8);
}

BroadeningRatio broadening_ratio(HalfInt spin, const Transition &t1, const Transition &t2) {
  const Rational denom = rank4_coefficient(spin, t2.m, t2.n);
  if (denom.is_zero())
    throw std::domain_error("t2 transition has no rank-4 broadening");
  return rank4_coefficient(spin, t1.m, t1.n) / denom;
}

double transition_frequency(const SpinSystem &sys, const Transition &t, double beta_r, double chi) {
  return first_order_shift(sys, t.m, t.n, beta_r, chi) +
         second_order_shift(sys, t.m, t.n, beta_r, chi);
}

} // namespace stmas
