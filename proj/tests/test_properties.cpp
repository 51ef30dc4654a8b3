#include "doctest.h"

#include <random>

#include "dp2ff/expr.hpp"
#include "dp2ff/fpdynamics.hpp"
#include "dp2ff/tau.hpp"
#include "support.hpp"

using namespace dp2ff;

namespace {

constexpr int kCases = 1000;
const std::vector<long> kPrimes{3, 5, 7, 11, 13};

struct Gen {
  std::mt19937_64 rng{dp2ff::testing::kSeed};

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

  Prime prime() { return Prime(kPrimes[static_cast<std::size_t>(integer(0, 4))]); }

  Rational rational() {
    long den = 0;
    while (den == 0) den = integer(-60, 60);
    return Rational(integer(-500, 500)) / Rational(den);
  }

  // A rational with nonnegative valuation at p.
  Rational integral(Prime p) {
    long den = 0;
    while (den == 0 || den % p.value() == 0) den = integer(-60, 60);
    return Rational(integer(-500, 500)) / Rational(den);
  }

  EpsRational eps_rational() {
    auto poly = [&] {
      std::vector<Rational> c;
      const long deg = integer(0, 3);
      for (long i = 0; i <= deg; ++i) c.push_back(Rational(integer(-5, 5)));
      return EpsPoly(c);
    };
    EpsPoly den = poly();
    while (den.is_zero()) den = poly();
    return EpsRational(poly(), den);
  }

  MapExprPtr expr(int depth) {
    using K = MapExpr::Kind;
    if (depth == 0 || integer(0, 3) == 0) {
      switch (integer(0, 4)) {
        case 0: return MapExpr::variable(K::VarX);
        case 1: return MapExpr::variable(K::VarY);
        case 2: return MapExpr::param("a");
        case 3: return MapExpr::literal(Rational(integer(1, 9)) / Rational(integer(1, 4)));
        default: return MapExpr::variable(K::VarN);
      }
    }
    switch (integer(0, 5)) {
      case 0: return MapExpr::unary_neg(expr(depth - 1));
      case 1: return MapExpr::pow(expr(depth - 1), static_cast<unsigned>(integer(0, 3)));
      case 2: return MapExpr::binary(K::Add, expr(depth - 1), expr(depth - 1));
      case 3: return MapExpr::binary(K::Sub, expr(depth - 1), expr(depth - 1));
      case 4: return MapExpr::binary(K::Mul, expr(depth - 1), expr(depth - 1));
      default: return MapExpr::binary(K::Div, expr(depth - 1), expr(depth - 1));
    }
  }
};

}  // namespace

TEST_SUITE("properties") {
  TEST_CASE("reduction is a ring homomorphism on integral rationals") {
    Gen g;
    for (int i = 0; i < kCases; ++i) {
      const Prime p = g.prime();
      const Rational x = g.integral(p), y = g.integral(p);
      CHECK(reduce_mod(x + y, p) == reduce_mod(x, p) + reduce_mod(y, p));
      CHECK(reduce_mod(x * y, p) == reduce_mod(x, p) * reduce_mod(y, p));
      CHECK(reduce_mod(x - y, p) == reduce_mod(x, p) - reduce_mod(y, p));
    }
  }

  TEST_CASE("ultrametric inequality with the equality clause") {
    Gen g;
    for (int i = 0; i < kCases; ++i) {
      const Prime p = g.prime();
      const Rational x = g.rational(), y = g.rational();
      const Rational nx = pnorm(x, p), ny = pnorm(y, p), ns = pnorm(x + y, p);
      const Rational mx = nx < ny ? ny : nx;
      CHECK(ns <= mx);
      if (nx != ny) CHECK(ns == mx);
      CHECK(pnorm(x * y, p) == nx * ny);
    }
  }

  TEST_CASE("eps field axioms and canonical form") {
    Gen g;
    for (int i = 0; i < kCases; ++i) {
      const EpsRational f = g.eps_rational(), h = g.eps_rational(), k = g.eps_rational();
      CHECK((f + h) - h == f);
      CHECK(f * (h + k) == f * h + f * k);
      if (!h.is_zero()) CHECK((f / h) * h == f);
      if (!f.is_zero() && !h.is_zero()) CHECK(ord0(f * h) == ord0(f) + ord0(h));
    }
  }

  TEST_CASE("printed expressions re-parse to the same tree") {
    Gen g;
    for (int i = 0; i < kCases; ++i) {
      const MapExprPtr e = g.expr(4);
      const std::string text = print_map_expr(*e);
      CHECK_MESSAGE(equal(*parse_map_expr(text), *e), text);
    }
  }

  TEST_CASE("case 1 commutes with reduction") {
    Gen g;
    int checked = 0;
    while (checked < kCases) {
      const Prime p = g.prime();
      const long delta = g.integer(1, p.value() - 1);
      const DP2Params P = build_dp2_params(p, Rational(g.integer(-20, 20)), Rational(delta),
                                           Rational(g.integer(-20, 20)));
      const long n = g.integer(-30, 30);
      const Rational t = g.integral(p), u = g.integral(p);
      const FpElem ur = reduce_mod(u, p);
      if (ur.residue() == 1 || ur.residue() == p.value() - 1) continue;
      const auto exact = dp2_step(Point<Rational>{u, t}, n, P);
      const PatternOutput o =
          dp2_fp_pattern(FpState{reduce_proj(t, p), FpProj::finite(ur), n}, P);
      CHECK(o.case_number == 1);
      CHECK(o.emitted.front() == reduce_proj(exact.x, p));
      ++checked;
    }
  }

  TEST_CASE("Bareiss agrees with cofactor expansion") {
    Gen g;
    for (int i = 0; i < kCases; ++i) {
      const long N = g.integer(1, 5);
      RationalMatrix m(static_cast<std::size_t>(N));
      for (auto& row : m) {
        for (long j = 0; j < N; ++j) row.push_back(g.integer(0, 4) == 0 ? Rational(0) : g.rational());
      }
      CHECK(det_bareiss(m) == det_cofactor(m));
    }
  }

  TEST_CASE("tau matrices agree between determinant engines") {
    Gen g;
    for (int i = 0; i < kCases; ++i) {
      const long N = g.integer(1, 4);
      const long n = g.integer(-20, 20);
      Rational l = g.rational();
      if (l.is_zero()) l = Rational(1);
      const RationalMatrix m = tau_matrix(N, n, l);
      CHECK(det_bareiss(m) == det_cofactor(m));
    }
  }

  TEST_CASE("seven-case engine matches the eps engine on random states") {
    Gen g;
    int checked = 0;
    while (checked < kCases) {
      const Prime p(g.integer(0, 1) == 0 ? 5 : 7);
      const long delta = g.integer(1, p.value() - 1);
      const DP2Params P = build_dp2_params(p, Rational(g.integer(-10, 10)), Rational(delta),
                                           Rational(g.integer(-10, 10)), ZeroPlacement::kAllowMissing);
      if (!P.alpha_has_zero || !P.beta_has_zero) continue;
      const long u = g.integer(0, 1) == 0 ? 1 : p.value() - 1;
      const long t = g.integer(0, p.value() - 1);
      const long n = g.integer(0, p.value() - 1);
      const auto mismatch = dp2ff::testing::compare_engines(P, t, u, n);
      CHECK_MESSAGE(!mismatch, "t=", t, " u=", u, " n=", n);
      ++checked;
    }
  }
}
