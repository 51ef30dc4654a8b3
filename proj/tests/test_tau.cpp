#include "doctest.h"

#include "dp2ff/tau.hpp"

using namespace dp2ff;

namespace {

std::vector<FpProj> seq(Prime p, std::initializer_list<long> values) {
  std::vector<FpProj> out;
  for (long v : values) out.push_back(v < 0 ? FpProj::infinity() : FpProj::residue(v, p));
  return out;
}

const Rational kOne(1);

}  // namespace

TEST_SUITE("tau") {
  TEST_CASE("laguerre values") {
    CHECK(laguerre(-1, 5, kOne) == Rational(0));
    CHECK(laguerre(0, -7, Rational(3) / Rational(4)) == Rational(1));
    CHECK(laguerre(2, 0, kOne) == Rational(-1) / Rational(2));
    CHECK(laguerre(3, 0, kOne) == Rational(-2) / Rational(3));
  }

  TEST_CASE("laguerre satisfies the three-term recurrence") {
    for (long nu = -6; nu <= 6; ++nu) {
      for (const Rational& l : {kOne, Rational(-2), Rational(3) / Rational(5)}) {
        for (long k = 2; k <= 8; ++k) {
          const Rational lhs = Rational(k) * laguerre(k, nu, l);
          const Rational rhs = (Rational(2 * k - 1 + nu) - l) * laguerre(k - 1, nu, l) -
                               Rational(k - 1 + nu) * laguerre(k - 2, nu, l);
          CHECK(lhs == rhs);
        }
      }
    }
  }

  TEST_CASE("binomial uses the falling factorial") {
    CHECK(binomial(5, 2) == Rational(10));
    CHECK(binomial(-3, 2) == Rational(6));
    CHECK(binomial(2, 5) == Rational(0));
    CHECK(binomial(4, -1) == Rational(0));
  }

  TEST_CASE("tau determinants") {
    CHECK(tau_det(2, 0, kOne) == Rational(2) / Rational(3));
    for (long n = -5; n <= 5; ++n) CHECK(tau_det(1, n, Rational(2)) == Rational(n + 1 - 2));
    const RationalMatrix m = tau_matrix(3, 0, kOne);
    CHECK(m[2][0] == Rational(0));
    CHECK(det_bareiss(m) == det_cofactor(m));
    CHECK_THROWS_AS(tau_det(0, 0, kOne), Error);
    const RationalMatrix singular{{Rational(0), Rational(1)}, {Rational(0), Rational(2)}};
    CHECK(det_bareiss(singular) == Rational(0));
    const RationalMatrix pivot{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
    CHECK(det_bareiss(pivot) == Rational(-1));
  }

  TEST_CASE("rational solution solves the scalar equation") {
    const TauParams tp = TauParams::make(3, kOne);
    const ExactCoefficients c = tp.coefficients();
    for (long n = 1; n <= 6; ++n) {
      CHECK(dp2_scalar_residual(rational_u(n - 1, tp), rational_u(n, tp), rational_u(n + 1, tp), n, c)
                .is_zero());
    }
    CHECK_THROWS_AS(TauParams::make(0, kOne), Error);
    CHECK_THROWS_AS(TauParams::make(2, Rational(0)), Error);
    try {
      rational_u(1, TauParams::make(1, Rational(2)));
      FAIL("expected ZERO_TAU_DENOMINATOR");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ZeroTauDenominator);
    }
  }

  TEST_CASE("reduced table rows") {
    const TauParams tp = TauParams::make(3, kOne);
    CHECK(reduced_solution(tp, Prime(3), 6) == seq(Prime(3), {1, 2, -1, 1, 2, -1}));
    CHECK(reduced_solution(tp, Prime(5), 5) == seq(Prime(5), {4, 2, 3, 1, -1}));
    CHECK(reduced_solution(tp, Prime(7), 14) ==
          seq(Prime(7), {1, -1, 6, 5, 1, -1, 6, 1, -1, 6, 5, 1, -1, 6}));
    CHECK(reduced_solution(tp, Prime(11), 11) ==
          seq(Prime(11), {-1, 1, 6, 1, -1, 10, -1, 1, 0, 2, 10}));
    for (long p : {3L, 5L, 7L, 11L, 13L}) {
      CHECK(reduced_solution(tp, Prime(p), 2 * p) == reduced_solution_serial(tp, Prime(p), 2 * p));
    }
  }

  TEST_CASE("reduced solution argument checks") {
    try {
      reduced_solution(TauParams::make(3, Rational(5)), Prime(5), 3);
      FAIL("expected NON_INTEGRAL_PARAMETER");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NonIntegralParameter);
    }
    CHECK_THROWS_AS(reduced_solution(TauParams::make(3, kOne), Prime(5), 0), Error);
  }

  TEST_CASE("taucond diagnostics") {
    const TauParams tp = TauParams::make(3, kOne);
    const TauCondition c11 = taucond(tp, Prime(11));
    CHECK(c11.diag_product == FpProj::residue(0, Prime(11)));
    CHECK(c11.diag_ratio == FpProj::residue(7, Prime(11)));
    CHECK_FALSE(c11.product_nonzero);
    CHECK(c11.ratio_not_two);
    const TauCondition c5 = taucond(tp, Prime(5));
    CHECK(c5.diag_product == FpProj::infinity());
    CHECK(c5.diag_ratio == FpProj::residue(4, Prime(5)));
    const TauCondition c7 = taucond(tp, Prime(7));
    CHECK(c7.diag_product == FpProj::infinity());
    CHECK(c7.diag_ratio == FpProj::residue(0, Prime(7)));
  }

  TEST_CASE("tau family coefficients") {
    const TauParams tp = TauParams::make(3, kOne);
    CHECK(tp.a() == Rational(-8));
    CHECK(tp.delta() == Rational(2));
    CHECK(tp.z0() == Rational(2));
    const DP2Params P = tau_dp2_params(tp, Prime(5));
    CHECK(P.alpha(3) == Rational(0));
  }
}
