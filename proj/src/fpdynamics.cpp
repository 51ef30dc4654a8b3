#include "dp2ff/fpdynamics.hpp"

#include <map>

namespace dp2ff {

namespace {

FpElem checked_div(const FpElem& num, const FpElem& den, int case_number) {
  if (den.is_zero()) {
    throw Error(ErrorCode::UndefinedCase,
                "case " + std::to_string(case_number) + " divides by a zero residue");
  }
  return num / den;
}

// c/d, with the convention that an exactly vanishing coefficient drops the term.
FpElem term(const FpElem& c, const FpElem& d) { return c.is_zero() ? c : c / d; }

}  // namespace

PatternOutput dp2_fp_pattern(const FpState& state, const DP2Params& params) {
  if (state.u_cur.is_infinite() || state.u_prev.is_infinite()) {
    throw Error(ErrorCode::InfiniteInitial, "pattern input must be finite");
  }
  const Prime p = params.p;
  const long n = state.n;
  const FpElem t = state.u_prev.elem();
  const FpElem u = state.u_cur.elem();
  const FpElem one(1, p), two(2, p);
  const FpElem a = reduce_mod(params.a, p);
  const FpElem d = reduce_mod(params.delta, p);
  const FpProj inf = FpProj::infinity();
  const FpProj plus = FpProj::residue(1, p);
  const FpProj minus = FpProj::residue(p.value() - 1, p);

  auto finish = [&](std::vector<FpProj> head, const FpElem& last, int number) {
    const FpProj before = head.empty() ? state.u_cur : head.back();
    head.push_back(FpProj::finite(last));
    const long m = static_cast<long>(head.size());
    return PatternOutput{std::move(head), FpState{before, FpProj::finite(last), n + m}, number};
  };

  const bool at_plus = u.residue() == 1;
  const bool at_minus = u.residue() == p.value() - 1;
  const FpElem alpha_n = params.alpha_residue(n);
  const FpElem beta_n = params.beta_residue(n);

  if ((!at_plus && !at_minus) || (at_plus && alpha_n.is_zero()) ||
      (at_minus && beta_n.is_zero())) {
    return finish({}, term(alpha_n, one - u) + term(beta_n, one + u) - t, 1);
  }
  if (at_plus) {
    const FpElem beta_2 = params.beta_residue(n + 2);
    if (!beta_2.is_zero()) {
      const FpElem num = two * alpha_n * t + two * d * params.beta_residue(n + 1) + (two - d) * a;
      return finish({inf, minus}, checked_div(num, two * beta_2, 2), 2);
    }
    if (!(a + d).is_zero()) {
      return finish({inf, minus, inf, plus}, -checked_div(a * d - (a - d) * t, a + d, 3), 3);
    }
    return finish({inf, minus, inf, plus, inf, minus}, checked_div(one + two * t, two, 4), 4);
  }
  const FpElem alpha_2 = params.alpha_residue(n + 2);
  if (!alpha_2.is_zero()) {
    const FpElem num =
        a * (d - two) - two * d * params.alpha_residue(n + 1) + two * beta_n * t;
    return finish({inf, plus}, checked_div(num, two * alpha_2, 5), 5);
  }
  if (!(a - d).is_zero()) {
    return finish({inf, plus, inf, minus}, checked_div(a * d + (a + d) * t, a - d, 6), 6);
  }
  return finish({inf, plus, inf, minus, inf, plus}, checked_div(two * t - one, two, 7), 7);
}

std::vector<FpProj> dp2_fp_orbit(const FpProj& u0, const FpProj& u1, long steps,
                                 const DP2Params& params, long n0) {
  if (steps < 0) throw Error(ErrorCode::InvalidArgument, "steps must be nonnegative");
  std::vector<FpProj> out;
  if (steps == 0) return out;
  out.push_back(u1);
  FpState state{u0, u1, n0};
  while (static_cast<long>(out.size()) < steps) {
    PatternOutput next = dp2_fp_pattern(state, params);
    for (const auto& v : next.emitted) {
      if (static_cast<long>(out.size()) == steps) break;
      out.push_back(v);
    }
    state = next.next_state;
  }
  return out;
}

long detect_period(const OrbitStep& step, long max_states) {
  std::map<StateKey, long> seen;
  long position = 0;
  for (long i = 0; i <= max_states; ++i) {
    auto [key, produced] = step();
    position += produced;
    auto [it, inserted] = seen.emplace(std::move(key), position);
    if (!inserted) return position - it->second;
  }
  throw Error(ErrorCode::NoPeriodFound,
              "no repeated state within " + std::to_string(max_states) + " steps");
}

long dp2_fp_period(const FpState& start, const DP2Params& params) {
  const long p = params.p.value();
  auto key_of = [p](const FpState& s) {
    auto token = [p](const FpProj& v) { return v.is_infinite() ? p : v.elem().residue(); };
    return StateKey{token(s.u_prev), token(s.u_cur), ((s.n % p) + p) % p};
  };
  FpState state = start;
  bool first = true;
  OrbitStep step = [&]() -> std::pair<StateKey, long> {
    if (first) {
      first = false;
      return {key_of(state), 0};
    }
    PatternOutput next = dp2_fp_pattern(state, params);
    state = next.next_state;
    return {key_of(state), static_cast<long>(next.emitted.size())};
  };
  try {
    return detect_period(step, (p + 1) * (p + 1) * p + 1);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NoPeriodFound) throw;
    throw Error(ErrorCode::NoPeriodFound, std::string("orbit generator failed: ") + e.what());
  }
}

}  // namespace dp2ff
