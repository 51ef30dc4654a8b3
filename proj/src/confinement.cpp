#include "dp2ff/confinement.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <tuple>

#include <omp.h>

namespace dp2ff {

const char* to_string(ConfinementStatus status) {
  switch (status) {
    case ConfinementStatus::kConfined: return "CONFINED";
    case ConfinementStatus::kNotConfined: return "NOT_CONFINED";
    case ConfinementStatus::kDegreeOverflow: return "DEGREE_OVERFLOW";
  }
  return "UNKNOWN";
}

namespace {

using EpsPoint = Point<EpsRational>;

// Finite limit with vp >= 0, i.e. the coordinate reduces to a residue.
std::optional<Rational> integral_limit(const EpsRational& f, Prime p) {
  if (ord0(f) < Valuation::finite(0)) return std::nullopt;
  Rational v = eval0(f);
  if (vp(v, p) < Valuation::finite(0)) return std::nullopt;
  return v;
}

FpProj reduced_limit(const EpsRational& f, Prime p) {
  const auto v = integral_limit(f, p);
  return v ? FpProj::finite(reduce_mod(*v, p)) : FpProj::infinity();
}

long pole_depth(const EpsPoint& s) {
  long depth = 0;
  for (const auto* f : {&s.x, &s.y}) {
    const Valuation o = ord0(*f);
    if (!o.is_infinite()) depth = std::max(depth, -o.value());
  }
  return depth;
}

// Iterates `step` from `start`. `before(state, j)` runs ahead of step j and
// returns false to abandon the run (the caller restarts with new data).
template <class Step, class Before>
std::optional<ConfinementReport> iterate(EpsPoint state, long n0, Prime p,
                                         const ConfineOptions& options, Step&& step,
                                         Before&& before) {
  ConfinementReport report;
  for (int j = 0; j < options.max_steps; ++j) {
    if (!before(state, j)) return std::nullopt;
    try {
      state = step(state, n0 + j, j);
      enforce_degree_bound(state.x, options.degree_bound);
      enforce_degree_bound(state.y, options.degree_bound);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegreeOverflow) throw;
      report.status = ConfinementStatus::kDegreeOverflow;
      return report;
    }
    report.pole_orders.push_back(ord0(state.x));
    report.trajectory.push_back(reduced_limit(state.x, p));

    const auto vx = integral_limit(state.x, p);
    const auto vy = integral_limit(state.y, p);
    if (vx && vy) {
      report.status = ConfinementStatus::kConfined;
      report.m = j + 1;
      report.image_x = FpProj::finite(reduce_mod(*vx, p));
      report.image_y = FpProj::finite(reduce_mod(*vy, p));
      return report;
    }
    if (pole_depth(state) > options.divergence_depth) break;
  }
  report.status = ConfinementStatus::kNotConfined;
  return report;
}

EpsPoint lifted_start(const SingularLift& lift) {
  const EpsRational eps = EpsRational::eps();
  return {EpsRational(lift.s) + eps, lift.shared_eps ? EpsRational(lift.y0) + eps
                                                     : EpsRational(lift.y0)};
}

// Coefficients of a dP-II confinement window. Inside the window alpha and beta
// are exactly linear in the time offset j (slopes +delta/2 and -delta/2), so
// the cancellations the confinement relies on hold exactly. Each sequence
// either continues linearly from the periodic table at the window start, or is
// re-anchored to vanish exactly at the offset where the orbit meets the
// corresponding singular value with a residue-zero coefficient.
struct CoefficientWindow {
  Rational alpha0;
  Rational beta0;
  Rational half_delta;
  std::optional<int> alpha_anchor;
  std::optional<int> beta_anchor;

  Rational alpha(int j) const {
    return alpha_anchor ? Rational(j - *alpha_anchor) * half_delta
                        : alpha0 + Rational(j) * half_delta;
  }
  Rational beta(int j) const {
    return beta_anchor ? Rational(*beta_anchor - j) * half_delta
                       : beta0 - Rational(j) * half_delta;
  }
};

ConfinementReport confine_dp2(const DP2Params& params, const SingularLift& lift,
                              const ConfineOptions& options) {
  const Prime p = params.p;
  CoefficientWindow window{params.alpha(lift.n0), params.beta(lift.n0),
                           params.delta / Rational(2), std::nullopt, std::nullopt};
  bool conflict = false;

  // Anchors only ever get added, at most one per sequence, so two restarts
  // suffice; the bound is a guard.
  for (int attempt = 0; attempt < 4; ++attempt) {
    auto before = [&](const EpsPoint& s, int j) {
      const auto v = integral_limit(s.x, p);
      if (!v) return true;
      const FpElem r = reduce_mod(*v, p);
      const bool at_plus = r.residue() == 1;
      const bool at_minus = r.residue() == p.value() - 1;
      if (!at_plus && !at_minus) return true;
      const Rational c = at_plus ? window.alpha(j) : window.beta(j);
      if (c.is_zero() || !reduce_mod(c, p).is_zero()) return true;
      auto& anchor = at_plus ? window.alpha_anchor : window.beta_anchor;
      if (anchor) {
        conflict = true;
        return true;
      }
      anchor = j;
      return false;
    };
    auto step = [&](const EpsPoint& s, long /*n*/, int j) {
      return dp2_step(s, window.alpha(j), window.beta(j));
    };
    auto result = iterate(lifted_start(lift), lift.n0, p, options, step, before);
    if (!result) continue;
    const int steps = static_cast<int>(result->pole_orders.size());
    for (int j = 0; j < std::max(steps, 1); ++j) {
      result->alphas.push_back(window.alpha(j));
      result->betas.push_back(window.beta(j));
    }
    result->lift_conflict = conflict;
    return *result;
  }
  throw Error(ErrorCode::UndefinedCase, "coefficient window did not stabilise");
}

}  // namespace

ConfinementReport confine(const MapFamily& map, const SingularLift& lift,
                          const ConfineOptions& options) {
  if (options.max_steps < 1) throw Error(ErrorCode::InvalidArgument, "max_steps must be >= 1");
  if (const auto* dp2 = std::get_if<DP2Params>(&map)) return confine_dp2(*dp2, lift, options);
  auto step = [&](const EpsPoint& s, long n, int /*j*/) { return map_step(map, s, n); };
  auto before = [](const EpsPoint&, int) { return true; };
  return *iterate(lifted_start(lift), lift.n0, family_prime(map), options, step, before);
}

ConfinementReport confine_dp2_case(const DP2Params& params, int singular_value, long n,
                                   const Rational& y0, const ConfineOptions& options) {
  if (singular_value != 1 && singular_value != -1) {
    throw Error(ErrorCode::InvalidArgument, "singular value must be +1 or -1");
  }
  if (vp(y0, params.p) < Valuation::finite(0)) {
    throw Error(ErrorCode::NegativeValuation, "companion value is not p-integral");
  }
  return confine(params, SingularLift{Rational(singular_value), y0, n, false}, options);
}

SamplingCheck verify_by_sampling(const MapFamily& map, const SingularLift& lift,
                                 const ConfinementReport& report) {
  SamplingCheck check;
  if (!report.confined()) return check;
  const Prime p = family_prime(map);
  const bool is_dp2 = std::holds_alternative<DP2Params>(map);
  for (long c = 1; c <= 3; ++c) {
    Rational power(1);
    for (long k = 1; k <= 3; ++k) {
      power *= Rational(p.value());
      const Rational eps = Rational(c) * power;
      Point<Rational> s{lift.s + eps, lift.shared_eps ? lift.y0 + eps : lift.y0};
      ++check.samples;
      try {
        for (int j = 0; j < report.m; ++j) {
          s = is_dp2 ? dp2_step(s, report.alphas[static_cast<std::size_t>(j)],
                                report.betas[static_cast<std::size_t>(j)])
                     : map_step(map, s, lift.n0 + j);
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::DivisionByZero) throw;
        continue;
      }
      if (reduce_proj(s.x, p) == report.image_x && reduce_proj(s.y, p) == report.image_y) {
        ++check.agreeing;
      }
    }
  }
  return check;
}

std::vector<ScanEntry> scan_plan(const MapFamily& map) {
  const Prime p = family_prime(map);
  const long P = p.value();
  std::vector<ScanEntry> plan;
  auto add = [&](long point, const Rational& s, long y, bool shared) {
    for (long n = 0; n < P; ++n) {
      ScanEntry e;
      e.point = FpProj::residue(point, p);
      e.y_residue = y;
      e.n = n;
      e.lift = SingularLift{s, Rational(y), n, shared};
      plan.push_back(std::move(e));
    }
  };
  if (std::holds_alternative<DP2Params>(map)) {
    for (long y = 0; y < P; ++y) add(1, Rational(1), y, false);
    for (long y = 0; y < P; ++y) add(P - 1, Rational(-1), y, false);
  } else if (std::holds_alternative<QRTParams>(map)) {
    for (long y = 0; y < P; ++y) add(0, Rational(0), y, y == 0);
  } else {
    for (long x = 0; x < P; ++x) {
      for (long y = 0; y < P; ++y) add(x, Rational(symmetric_lift(FpElem(x, p))), y, false);
    }
  }
  return plan;
}

namespace {

void run_entry(const MapFamily& map, ScanEntry& entry, const ScanOptions& options) {
  try {
    entry.report = confine(map, entry.lift, options.confine);
  } catch (const Error& e) {
    // Custom maps: a companion value that is exactly singular gets the same
    // shared-eps treatment as the Psi_gamma double zero.
    if (e.code() != ErrorCode::DivisionByZero || entry.lift.shared_eps ||
        !std::holds_alternative<CustomMap>(map)) {
      throw;
    }
    entry.lift.shared_eps = true;
    entry.report = confine(map, entry.lift, options.confine);
  }
  if (options.verify_sampling && entry.report.confined()) {
    entry.sampling_checked = true;
    entry.sampling_agrees = verify_by_sampling(map, entry.lift, entry.report).ok();
  }
}

void check_scan_size(const MapFamily& map, const ScanOptions& options) {
  const long p = family_prime(map).value();
  if (p > options.max_prime) {
    throw Error(ErrorCode::InvalidArgument, "agr-scan limited to p <= " +
                                                std::to_string(options.max_prime));
  }
}

void summarize(ScanResult& result, Prime p, const ScanOptions& options) {
  result.all_confined = true;
  result.sampling_consistent = options.verify_sampling;
  using Key = std::tuple<long, long, bool>;
  std::map<Key, std::vector<std::pair<long, FpProj>>> xs, ys;
  for (const auto& e : result.entries) {
    if (!e.report.confined()) {
      result.all_confined = false;
      continue;
    }
    if (!e.sampling_checked || !e.sampling_agrees) result.sampling_consistent = false;
    const Key key{e.point.elem().residue(), e.n, e.lift.shared_eps};
    xs[key].emplace_back(e.y_residue, e.report.image_x);
    ys[key].emplace_back(e.y_residue, e.report.image_y);
  }
  result.closed_forms_consistent = true;
  for (const auto& [key, pts] : xs) {
    if (!fits_degree_one(pts, p) || !fits_degree_one(ys[key], p)) {
      result.closed_forms_consistent = false;
    }
  }
}

}  // namespace

ScanResult agr_scan_serial(const MapFamily& map, const ScanOptions& options) {
  check_scan_size(map, options);
  ScanResult result;
  result.entries = scan_plan(map);
  for (auto& entry : result.entries) run_entry(map, entry, options);
  summarize(result, family_prime(map), options);
  return result;
}

ScanResult agr_scan(const MapFamily& map, const ScanOptions& options) {
  check_scan_size(map, options);
  ScanResult result;
  result.entries = scan_plan(map);
  const auto count = static_cast<long>(result.entries.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) {
    try {
      run_entry(map, result.entries[static_cast<std::size_t>(i)], options);
    } catch (...) {
#pragma omp critical(dp2ff_scan_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  summarize(result, family_prime(map), options);
  return result;
}

bool fits_degree_one(const std::vector<std::pair<long, FpProj>>& points, Prime p) {
  if (points.size() <= 2) return true;
  const long P = p.value();
  const FpProj& v0 = points[0].second;
  const FpProj& v1 = points[1].second;
  const FpProj& v2 = points[2].second;
  if (v0 == v1 && v1 == v2) {
    return std::all_of(points.begin(), points.end(),
                       [&](const auto& pt) { return pt.second == v0; });
  }
  // A non-constant Moebius map is injective.
  if (v0 == v1 || v1 == v2 || v0 == v2) return false;

  // Null vector (A, B, C, D) of: A y + B - v (C y + D) = 0, or C y + D = 0 at v = inf.
  auto md = [P](long v) { return ((v % P) + P) % P; };
  long m[3][4];
  for (int r = 0; r < 3; ++r) {
    const long y = md(points[static_cast<std::size_t>(r)].first);
    const FpProj& v = points[static_cast<std::size_t>(r)].second;
    if (v.is_infinite()) {
      m[r][0] = 0; m[r][1] = 0; m[r][2] = y; m[r][3] = 1;
    } else {
      const long vv = v.elem().residue();
      m[r][0] = y; m[r][1] = 1; m[r][2] = md(-vv * y); m[r][3] = md(-vv);
    }
  }
  int pivot_col[3] = {-1, -1, -1};
  int row = 0;
  for (int col = 0; col < 4 && row < 3; ++col) {
    int sel = -1;
    for (int r = row; r < 3; ++r) {
      if (m[r][col] != 0) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    std::swap(m[row], m[sel]);
    const long inv = fp_inv(FpElem(m[row][col], p)).residue();
    for (int c = 0; c < 4; ++c) m[row][c] = md(m[row][c] * inv);
    for (int r = 0; r < 3; ++r) {
      if (r == row || m[r][col] == 0) continue;
      const long f = m[r][col];
      for (int c = 0; c < 4; ++c) m[r][c] = md(m[r][c] - f * m[row][c]);
    }
    pivot_col[row++] = col;
  }
  long sol[4] = {0, 0, 0, 0};
  int free_col = -1;
  for (int c = 0; c < 4 && free_col < 0; ++c) {
    if (std::find(std::begin(pivot_col), std::end(pivot_col), c) == std::end(pivot_col)) {
      free_col = c;
    }
  }
  sol[free_col] = 1;
  for (int r = 0; r < row; ++r) sol[pivot_col[r]] = md(-m[r][free_col]);

  for (const auto& [y_raw, v] : points) {
    const long y = md(y_raw);
    const long num = md(sol[0] * y + sol[1]);
    const long den = md(sol[2] * y + sol[3]);
    if (num == 0 && den == 0) return false;
    const FpProj value = den == 0 ? FpProj::infinity()
                                  : FpProj::finite(FpElem(num, p) / FpElem(den, p));
    if (value != v) return false;
  }
  return true;
}

}  // namespace dp2ff
