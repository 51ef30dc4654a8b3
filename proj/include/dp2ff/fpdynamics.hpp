#pragma once

// dP-II evolved directly on P^1(F_p) by the seven confined cases. A state is
// the pair (u_{n-1}, u_n) at time n; each case emits u_{n+1}, ..., u_{n+m}
// and hands over a new state whose previous value is finite.

#include <functional>
#include <utility>
#include <vector>

#include "dp2ff/maps.hpp"
#include "dp2ff/numbers.hpp"

namespace dp2ff {

struct FpState {
  FpProj u_prev = FpProj::infinity();
  FpProj u_cur = FpProj::infinity();
  long n = 0;  // time index of u_cur

  friend bool operator==(const FpState&, const FpState&) = default;
};

struct PatternOutput {
  std::vector<FpProj> emitted;  // u_{n+1}, ..., u_{n+m}
  FpState next_state;
  int case_number = 0;  // 1..7
};

/// One confined pattern. Coefficient zero tests read the exact tables.
PatternOutput dp2_fp_pattern(const FpState& state, const DP2Params& params);

/// u_{n0}, u_{n0+1}, ... (steps values), given u_{n0-1} = u0 and u_{n0} = u1.
std::vector<FpProj> dp2_fp_orbit(const FpProj& u0, const FpProj& u1, long steps,
                                 const DP2Params& params, long n0 = 1);

/// A generator step returns the key of the state it reached and how many
/// sequence values it produced on the way.
using StateKey = std::vector<long>;
using OrbitStep = std::function<std::pair<StateKey, long>()>;

/// Least number of sequence values between two visits of the same state.
/// Throws NoPeriodFound after max_states steps without a repeat.
long detect_period(const OrbitStep& step, long max_states);

/// Period of the pattern orbit through `start`, keyed by (u_prev, u_cur, n mod p).
long dp2_fp_period(const FpState& start, const DP2Params& params);

}  // namespace dp2ff
