#pragma once

#include "stmas/rational.hpp"
#include "stmas/spin.hpp"

namespace stmas {

/// Second-order shift split by rank, each term in Hz:
///   shift = rank0 + rank2 d2_00(chi) d2_00(beta) + rank4 d4_00(chi) d4_00(beta)
struct SecondOrderDecomposition {
  double rank0 = 0.0;
  double rank2 = 0.0;
  double rank4 = 0.0;

  double evaluate(double beta_r, double chi) const;
};

/// Integer weights on the three brackets of the second-order expansion.
/// Overridable only so tests can show a bracket has no influence.
struct SecondOrderWeights {
  double rank0 = -168.0;
  double rank2 = -60.0;
  double rank4 = 36.0;
};

using BroadeningRatio = Rational;

/// First-order shift nu_Q (m^2 - n^2)/4 (3cos^2 beta_R - 1) d2_00(chi), Hz.
double first_order_shift(const SpinSystem &sys, HalfInt m, HalfInt n, double beta_r, double chi);

/// Second-order shift for eta = 0, Hz.
double second_order_shift(const SpinSystem &sys, HalfInt m, HalfInt n, double beta_r, double chi,
                          const SecondOrderWeights &weights = {});

/// Rank-decomposed coefficients from exact bracket arithmetic.
SecondOrderDecomposition second_order_decomposition(const SpinSystem &sys, HalfInt m, HalfInt n);

/// 36 [f(m) - f(n)], f(x) = x(18S(S+1) - 34x^2 - 5), in units of nu_Q^2/(5040 nu0).
Rational rank4_coefficient(HalfInt spin, HalfInt m, HalfInt n);

/// rank4(t1) / rank4(t2), the ridge slope of a t1/t2 transition pair.
/// Throws std::domain_error when the t2 coefficient vanishes.
BroadeningRatio broadening_ratio(HalfInt spin, const Transition &t1, const Transition &t2);

/// Total (first + second order) shift of a transition, Hz.
double transition_frequency(const SpinSystem &sys, const Transition &t, double beta_r, double chi);

} // namespace stmas
