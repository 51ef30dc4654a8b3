#include "doctest.h"

#include "dp2ff/confinement.hpp"
#include "support.hpp"

using namespace dp2ff;
using dp2ff::testing::expected_case;

namespace {

QRTParams qrt(long gamma) { return build_qrt_params(Prime(5), gamma, Rational(1)); }

DP2Params p5_params() { return build_dp2_params(Prime(5), Rational(-8), Rational(2), Rational(2)); }

}  // namespace

TEST_SUITE("confinement") {
  TEST_CASE("QRT gamma = 2 confines in three steps at a single zero") {
    const ConfinementReport r = confine(qrt(2), SingularLift{Rational(0), Rational(1), 0, false});
    REQUIRE(r.confined());
    CHECK(r.m == 3);
    CHECK(r.image_x == FpProj::residue(1, Prime(5)));
    CHECK(r.image_y == FpProj::residue(0, Prime(5)));
    const SamplingCheck s = verify_by_sampling(qrt(2), SingularLift{Rational(0), Rational(1), 0, false}, r);
    CHECK(s.ok());
  }

  TEST_CASE("QRT gamma = 2 double zero confines in eight steps") {
    const ConfinementReport r = confine(qrt(2), SingularLift{Rational(0), Rational(0), 0, true});
    REQUIRE(r.confined());
    CHECK(r.m == 8);
  }

  TEST_CASE("QRT gamma = 3 diverges") {
    const ConfinementReport r = confine(qrt(3), SingularLift{Rational(0), Rational(1), 0, false});
    CHECK(r.status == ConfinementStatus::kNotConfined);
    REQUIRE(r.pole_orders.size() >= 3);
    long deepest = 0;
    for (const auto& v : r.pole_orders) {
      if (!v.is_infinite()) deepest = std::min(deepest, v.value());
    }
    CHECK(deepest < -ConfineOptions{}.divergence_depth);
  }

  TEST_CASE("confine_dp2_case reproduces the case examples") {
    const DP2Params P = p5_params();
    const ConfinementReport r = confine_dp2_case(P, 1, 4, Rational(3));
    REQUIRE(r.confined());
    CHECK(r.m == 3);
    CHECK(r.image_x == FpProj::residue(2, Prime(5)));
    CHECK(r.image_y == FpProj::residue(4, Prime(5)));

    // alpha_3 = 0: one step, image beta_3/2 - y0.
    const ConfinementReport r1 = confine_dp2_case(P, 1, 3, Rational(2));
    REQUIRE(r1.confined());
    CHECK(r1.m == 1);
    CHECK(r1.image_x == reduce_proj(P.beta(3) / Rational(2) - Rational(2), Prime(5)));

    // a = -delta and beta_{n+2} = 0 force the seven-step case.
    const DP2Params Q = build_dp2_params(Prime(5), Rational(-1), Rational(1), Rational(0));
    for (long n = 0; n < 5; ++n) {
      if (Q.alpha_residue(n).is_zero() || !Q.beta_residue(n + 2).is_zero()) continue;
      const ConfinementReport r7 = confine_dp2_case(Q, 1, n, Rational(1));
      REQUIRE(r7.confined());
      CHECK(r7.m == 7);
      CHECK(r7.image_x == reduce_proj(Rational(3) / Rational(2), Prime(5)));
      CHECK(r7.image_y == FpProj::residue(4, Prime(5)));
    }
  }

  TEST_CASE("confine_dp2_case rejects invalid input") {
    const DP2Params P = p5_params();
    CHECK_THROWS_AS(confine_dp2_case(P, 2, 0, Rational(0)), Error);
    CHECK_THROWS_AS(confine_dp2_case(P, 1, 0, Rational(1) / Rational(5)), Error);
  }

  TEST_CASE("closed forms hold across the parameter sweep") {
    for (long p : dp2ff::testing::sweep_primes()) {
      for (const auto& ip : dp2ff::testing::dp2_sweep()) {
        if (ip.delta % p == 0) continue;
        const DP2Params P = build_dp2_params(Prime(p), Rational(ip.a), Rational(ip.delta),
                                             Rational(ip.z0), ZeroPlacement::kAllowMissing);
        if (!P.alpha_has_zero || !P.beta_has_zero) continue;
        for (int sign : {1, -1}) {
          for (long n = 0; n < p; ++n) {
            for (long y = 0; y < p; ++y) {
              const auto want = expected_case(P, sign, n, y);
              const ConfinementReport r = confine_dp2_case(P, sign, n, Rational(y));
              REQUIRE(r.confined());
              CHECK(r.m == want.m);
              CHECK(r.image_x == want.image_x);
              CHECK(r.image_y == want.image_y);
            }
          }
        }
      }
    }
  }

  TEST_CASE("purely periodic coefficients lose confinement at the block boundary") {
    // At p = 3 the seven-step window crosses a period, so iterating the raw
    // tables changes the exact coefficients mid-pattern.
    const DP2Params Q = build_dp2_params(Prime(3), Rational(-1), Rational(1), Rational(0));
    bool saw_difference = false;
    for (long n = 0; n < 3; ++n) {
      for (long y = 0; y < 3; ++y) {
        const ConfinementReport window = confine_dp2_case(Q, 1, n, Rational(y));
        REQUIRE(window.confined());
        Point<EpsRational> s{EpsRational(Rational(1)) + EpsRational::eps(), EpsRational(Rational(y))};
        int periodic_m = 0;
        FpProj periodic_image = FpProj::infinity();
        try {
          for (int k = 1; k <= 12 && periodic_m == 0; ++k) {
            s = dp2_step(s, n + k - 1, Q);
            auto integral = [&](const EpsRational& f) {
              return ord0(f) >= Valuation::finite(0) && vp(eval0(f), Prime(3)) >= Valuation::finite(0);
            };
            if (integral(s.x) && integral(s.y)) {
              periodic_m = k;
              periodic_image = reduce_proj(eval0(s.x), Prime(3));
            }
          }
        } catch (const Error&) {
          periodic_m = -1;
        }
        if (periodic_m != window.m || periodic_image != window.image_x) saw_difference = true;
      }
    }
    CHECK(saw_difference);
  }

  TEST_CASE("fits_degree_one") {
    const Prime p(5);
    std::vector<std::pair<long, FpProj>> mobius;
    for (long y = 0; y < 5; ++y) {
      mobius.emplace_back(y, y == 0 ? FpProj::infinity() : FpProj::finite(fp_inv(FpElem(y, p))));
    }
    CHECK(fits_degree_one(mobius, p));
    std::vector<std::pair<long, FpProj>> square;
    for (long y = 0; y < 5; ++y) square.emplace_back(y, FpProj::residue(y * y, p));
    CHECK_FALSE(fits_degree_one(square, p));
  }

  TEST_CASE("agr_scan verdicts and serial equivalence") {
    for (long gamma : {0L, 1L, 2L}) {
      const ScanResult r = agr_scan(qrt(gamma));
      CHECK(r.has_almost_good_reduction());
    }
    const ScanResult bad = agr_scan(qrt(3));
    CHECK_FALSE(bad.has_almost_good_reduction());
    CHECK_FALSE(bad.all_confined);

    const DP2Params P = p5_params();
    const ScanResult par = agr_scan(P);
    const ScanResult ser = agr_scan_serial(P);
    REQUIRE(par.entries.size() == ser.entries.size());
    for (std::size_t i = 0; i < par.entries.size(); ++i) {
      CHECK(par.entries[i].report.m == ser.entries[i].report.m);
      CHECK(par.entries[i].report.image_x == ser.entries[i].report.image_x);
      CHECK(par.entries[i].report.image_y == ser.entries[i].report.image_y);
      CHECK(par.entries[i].report.status == ser.entries[i].report.status);
    }
    CHECK(par.has_almost_good_reduction());
    for (const auto& e : par.entries) {
      CHECK((e.report.m == 1 || e.report.m == 3 || e.report.m == 5 || e.report.m == 7));
    }
  }

  TEST_CASE("scan size guard") {
    ScanOptions o;
    o.max_prime = 3;
    try {
      agr_scan(qrt(2), o);
      FAIL("expected INVALID_ARGUMENT");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidArgument);
    }
  }
}
