#pragma once

// Shared fixtures: parameter sweeps and an independent transcription of the
// confined closed forms, evaluated over Q and then reduced.

#include <cstdint>
#include <optional>
#include <vector>

#include "dp2ff/confinement.hpp"
#include "dp2ff/fpdynamics.hpp"
#include "dp2ff/maps.hpp"

namespace dp2ff::testing {

inline constexpr std::uint64_t kSeed = 20261016;

struct IntParams {
  long a, delta, z0;
};

// Per prime these cover a + delta = 0, a - delta = 0 and the generic case
// modulo p, so every length at +1 and at -1 occurs somewhere in the sweep.
inline std::vector<IntParams> dp2_sweep() {
  return {{-8, 2, 2}, {1, 1, 0}, {-1, 1, 0}, {1, 2, 1}, {2, 1, 1}, {3, 2, 5}, {-4, 4, 1}};
}

inline const std::vector<long>& sweep_primes() {
  static const std::vector<long> primes{3, 5, 7};
  return primes;
}

struct ExpectedCase {
  int number;  // 1..7 in the order of the seven-case list
  int m;
  FpProj image_x;
  FpProj image_y;
};

// Confined data for x~_n = sign with companion y, straight from the case
// conditions, using the exact table values.
inline ExpectedCase expected_case(const DP2Params& P, int sign, long n, long y) {
  const Prime p = P.p;
  const Rational Y(y), two(2);
  const Rational& a = P.a;
  const Rational& d = P.delta;
  auto zero = [&](const Rational& v) { return reduce_mod(v, p).is_zero(); };
  auto fin = [&](const Rational& v) { return reduce_proj(v, p); };
  const FpProj plus = FpProj::residue(1, p), minus = FpProj::residue(p.value() - 1, p);
  if (sign > 0) {
    if (zero(P.alpha(n))) return {1, 1, fin(P.beta(n) / two - Y), plus};
    if (!zero(P.beta(n + 2))) {
      return {2, 3,
              fin((two * P.alpha(n) * Y + two * d * P.beta(n + 1) + (two - d) * a) /
                  (two * P.beta(n + 2))),
              minus};
    }
    if (!zero(a + d)) return {3, 5, fin(-(a * d - (a - d) * Y) / (a + d)), plus};
    return {4, 7, fin((Rational(1) + two * Y) / two), minus};
  }
  if (zero(P.beta(n))) return {1, 1, fin(P.alpha(n) / two - Y), minus};
  if (!zero(P.alpha(n + 2))) {
    return {5, 3,
            fin((a * (d - two) - two * d * P.alpha(n + 1) + two * P.beta(n) * Y) /
                (two * P.alpha(n + 2))),
            plus};
  }
  if (!zero(a - d)) return {6, 5, fin((a * d + (a + d) * Y) / (a - d)), minus};
  return {7, 7, fin((Rational(-1) + two * Y) / two), plus};
}

/// The reduced x-pattern between the singular value and the confined image.
inline std::vector<FpProj> expected_intermediates(Prime p, int sign, int m) {
  const FpProj inf = FpProj::infinity();
  const FpProj first = FpProj::residue(sign > 0 ? p.value() - 1 : 1, p);
  const FpProj second = FpProj::residue(sign > 0 ? 1 : p.value() - 1, p);
  std::vector<FpProj> out;
  for (int j = 1; j < m; ++j) {
    if (j % 2 == 1) out.push_back(inf);
    else out.push_back(((j / 2) % 2 == 1) ? first : second);
  }
  return out;
}

struct EngineMismatch {
  long u_prev, u_cur, n;
};

/// Seven-case pattern against the eps-engine for one state; nullopt when they agree.
inline std::optional<EngineMismatch> compare_engines(const DP2Params& P, long t, long u, long n) {
  const Prime p = P.p;
  const PatternOutput pat =
      dp2_fp_pattern(FpState{FpProj::residue(t, p), FpProj::residue(u, p), n}, P);
  const ConfinementReport rep =
      confine(P, SingularLift{Rational(symmetric_lift(FpElem(u, p))), Rational(t), n, false});
  const bool same = rep.confined() && rep.trajectory == pat.emitted &&
                    rep.image_x == pat.emitted.back() &&
                    rep.image_y == (pat.emitted.size() > 1 ? pat.emitted[pat.emitted.size() - 2]
                                                           : FpProj::residue(u, p)) &&
                    rep.m == static_cast<int>(pat.emitted.size());
  if (same) return std::nullopt;
  return EngineMismatch{t, u, n};
}

}  // namespace dp2ff::testing
