#include "stmas/quadrupolar.hpp"
#include "stmas/rotations.hpp"

#include <doctest.h>

#include <cmath>

using namespace stmas;

namespace {

const SpinSystem kO17 = build_spin_system(half(5), 81.312792e6, 1.0e6);

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

} // namespace

TEST_CASE("first-order shift") {
  CHECK(first_order_shift(kO17, half(1), half(-1), 0.3, 0.0) == 0.0);
  CHECK(first_order_shift(kO17, half(3), half(1), 0.0, 0.0) == doctest::Approx(1.0e6));
  for (const auto &t : transitions(kO17))
    CHECK(std::abs(first_order_shift(kO17, t.m, t.n, 0.4, magic_angle())) < 1e-6);
  for (int m = 1; m <= 5; m += 2)
    for (double beta : {0.0, 0.3, 1.1, 1.5})
      for (double chi : {0.0, 0.7, magic_angle()})
        CHECK(first_order_shift(kO17, half(m), half(-m), beta, chi) == 0.0);
}

TEST_CASE("second-order central transition isotropic part") {
  const auto d = second_order_decomposition(kO17, half(1), half(-1));
  const double expected = -(4.0 / 15.0) * 1e12 / 81.312792e6;
  CHECK(d.rank0 == doctest::Approx(expected).epsilon(1e-12));
  CHECK(d.rank0 == doctest::Approx(-3279.5).epsilon(1e-4));

  const auto zero_q = build_spin_system(half(5), 81.312792e6, 0.0);
  CHECK(second_order_shift(zero_q, half(3), half(1), 0.4, magic_angle()) == 0.0);
}

TEST_CASE("rank-4 coefficients and ratios are exact") {
  CHECK(rank4_coefficient(half(5), half(1), half(-1)) == Rational(5184));
  CHECK(rank4_coefficient(half(5), half(3), half(1)) == Rational(1512));
  CHECK(rank4_coefficient(half(5), half(5), half(3)) == Rational(-9504));

  const auto ct = representative_transition(half(5), TransitionLabel{0});
  const auto st1 = representative_transition(half(5), TransitionLabel{1});
  const auto st2 = representative_transition(half(5), TransitionLabel{2});
  CHECK(broadening_ratio(half(5), ct, ct) == Rational(1));
  CHECK(broadening_ratio(half(5), st1, ct) == Rational(7, 24));
  CHECK(broadening_ratio(half(5), st2, ct) == Rational(-11, 6));
  CHECK(broadening_ratio(half(3), representative_transition(half(3), TransitionLabel{1}),
                         representative_transition(half(3), TransitionLabel{0})) ==
        Rational(-8, 9));
  // m == n has no rank-4 part for t2 to divide by.
  const Transition zero_q{half(3), half(3), TransitionLabel{1}};
  CHECK_THROWS_AS(broadening_ratio(half(5), st1, zero_q), std::domain_error);
}

TEST_CASE("antisymmetry under level swap") {
  for (int twice : {3, 5, 7, 9}) {
    const auto sys = build_spin_system(half(twice), 1.3e8, 2.1e6);
    for (int m = -twice; m <= twice; m += 2)
      for (int n = -twice; n <= twice; n += 2) {
        if (m == n)
          continue;
        for (double beta : {0.2, 0.9}) {
          const double chi = 0.8;
          const double a1 = first_order_shift(sys, half(m), half(n), beta, chi);
          const double b1 = first_order_shift(sys, half(n), half(m), beta, chi);
          CHECK(rel_close(a1, -b1, 1e-12));
          const double a2 = second_order_shift(sys, half(m), half(n), beta, chi);
          const double b2 = second_order_shift(sys, half(n), half(m), beta, chi);
          CHECK(rel_close(a2, -b2, 1e-12));
        }
      }
  }
}

TEST_CASE("second-order scaling law") {
  const auto base = build_spin_system(half(5), 1e8, 1e6);
  const auto double_q = build_spin_system(half(5), 1e8, 2e6);
  const auto double_larmor = build_spin_system(half(5), 2e8, 1e6);
  for (const auto &t : transitions(base)) {
    const double s = second_order_shift(base, t.m, t.n, 0.6, 0.5);
    CHECK(rel_close(second_order_shift(double_q, t.m, t.n, 0.6, 0.5), 4.0 * s, 1e-12));
    CHECK(rel_close(second_order_shift(double_larmor, t.m, t.n, 0.6, 0.5), 0.5 * s, 1e-12));
  }
}

TEST_CASE("rank decomposition recomposes the shift") {
  for (const auto &t : transitions(kO17)) {
    const auto d = second_order_decomposition(kO17, t.m, t.n);
    for (int i = 0; i < 32; ++i)
      for (int j = 0; j < 32; ++j) {
        const double beta = kPi * i / 31.0;
        const double chi = kPi * j / 31.0;
        const double direct = second_order_shift(kO17, t.m, t.n, beta, chi);
        const double scale = std::abs(d.rank0) + std::abs(d.rank2) + std::abs(d.rank4);
        CHECK(std::abs(d.evaluate(beta, chi) - direct) <= 1e-9 * scale);
      }
  }
}

TEST_CASE("rank-2 bracket is invisible at the magic angle") {
  SecondOrderWeights perturbed;
  perturbed.rank2 *= 3.7;
  for (const auto &t : transitions(kO17))
    for (double beta : {0.0, 0.5, 1.2}) {
      const double a = second_order_shift(kO17, t.m, t.n, beta, magic_angle());
      const double b = second_order_shift(kO17, t.m, t.n, beta, magic_angle(), perturbed);
      CHECK(std::abs(a - b) < 1e-9 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("total frequency and level validation") {
  const auto st1 = representative_transition(half(5), TransitionLabel{1});
  CHECK(transition_frequency(kO17, st1, 0.7, 0.3) ==
        doctest::Approx(first_order_shift(kO17, st1.m, st1.n, 0.7, 0.3) +
                        second_order_shift(kO17, st1.m, st1.n, 0.7, 0.3)));
  CHECK_THROWS_AS(first_order_shift(kO17, half(7), half(5), 0.1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(second_order_shift(kO17, half(7), half(5), 0.1, 0.1), std::invalid_argument);
}

TEST_CASE("rational") {
  CHECK(Rational(14, 48) == Rational(7, 24));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(to_string(Rational(-22, 12)) == "-11/6");
  CHECK(to_string(Rational(4, 4)) == "1");
  CHECK(parse_rational("7/24") == Rational(7, 24));
  CHECK(parse_rational("-11/6") == Rational(-11, 6));
  CHECK(parse_rational("3") == Rational(3));
  CHECK_FALSE(parse_rational("1/0"));
  CHECK_FALSE(parse_rational("abc"));
  CHECK_FALSE(parse_rational("1/2/3"));
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  CHECK(Rational(1512) / Rational(5184) == Rational(7, 24));
}
