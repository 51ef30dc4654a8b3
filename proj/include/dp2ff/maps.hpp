#pragma once

// The dP-II map in system form, the Psi_gamma family, and user-defined maps.
// Step functions are generic over the arithmetic carrier (Rational, FpElem,
// EpsRational); the carrier's division raises DivisionByZero at singular
// points.

#include <variant>
#include <vector>

#include "dp2ff/epsfield.hpp"
#include "dp2ff/expr.hpp"
#include "dp2ff/numbers.hpp"

namespace dp2ff {

template <class F>
struct Point {
  F x;
  F y;

  friend bool operator==(const Point&, const Point&) = default;
};

/// alpha_n = (delta*n + z0 + a)/2, beta_n = (-delta*n - z0 + a)/2, without
/// any periodic redefinition. This is the coefficient set of the scalar
/// equation over Q.
struct ExactCoefficients {
  Rational a;
  Rational delta;
  Rational z0;

  Rational z(long n) const { return delta * Rational(n) + z0; }
  Rational alpha(long n) const { return (z(n) + a) / Rational(2); }
  Rational beta(long n) const { return (a - z(n)) / Rational(2); }
};

enum class ZeroPlacement {
  kRequired,      // NoExactZero when a table cannot contain an exact zero
  kAllowMissing,  // fall back to a zero shift and flag the table
};

/// Period-p coefficient tables with exact zeros placed by a shift of n_alpha*p
/// (resp. n_beta*p). Indexing uses the Euclidean residue of n.
struct DP2Params {
  Prime p;
  Rational a;
  Rational delta;
  Rational z0;
  Rational n_alpha;
  Rational n_beta;
  std::vector<Rational> alpha_table;
  std::vector<Rational> beta_table;
  bool alpha_has_zero = false;
  bool beta_has_zero = false;

  std::size_t index(long n) const;
  const Rational& alpha(long n) const { return alpha_table[index(n)]; }
  const Rational& beta(long n) const { return beta_table[index(n)]; }
  FpElem alpha_residue(long n) const { return reduce_mod(alpha(n), p); }
  FpElem beta_residue(long n) const { return reduce_mod(beta(n), p); }
  ExactCoefficients exact() const { return {a, delta, z0}; }
};

DP2Params build_dp2_params(Prime p, const Rational& a, const Rational& delta, const Rational& z0,
                           ZeroPlacement placement = ZeroPlacement::kRequired);

template <class F>
Point<F> dp2_step(const Point<F>& s, const Rational& alpha, const Rational& beta) {
  const F one = embed(Rational(1), s.x);
  return {embed(alpha, s.x) / (one - s.x) + embed(beta, s.x) / (one + s.x) - s.y, s.x};
}

/// One step of the system form at time n; Coefficients provides alpha(n), beta(n).
template <class F, class Coefficients>
Point<F> dp2_step(const Point<F>& s, long n, const Coefficients& coefficients) {
  return dp2_step(s, coefficients.alpha(n), coefficients.beta(n));
}

/// u_next + u_prev - (z_n u + a)/(1 - u^2); zero iff the triple solves dP-II at n.
Rational dp2_scalar_residual(const Rational& u_prev, const Rational& u, const Rational& u_next,
                             long n, const ExactCoefficients& params);

struct QRTParams {
  Prime p;
  unsigned gamma;
  Rational a;
};

/// a must lie in {1, ..., p-1} unless allow_zero_a is set.
QRTParams build_qrt_params(Prime p, long gamma, const Rational& a, bool allow_zero_a = false);

template <class F>
Point<F> qrt_step(const Point<F>& s, const QRTParams& params) {
  const F one = embed(Rational(1), s.x);
  return {(embed(params.a, s.x) * s.x + one) / (power(s.x, params.gamma) * s.y), s.x};
}

struct CustomMap {
  Prime p;
  MapExprPtr x_expr;
  MapExprPtr y_expr;
  ParamBindings params;
};

template <class F>
Point<F> custom_step(const Point<F>& s, long n, const CustomMap& map) {
  return {evaluate(*map.x_expr, s.x, s.y, n, map.params),
          evaluate(*map.y_expr, s.x, s.y, n, map.params)};
}

using MapFamily = std::variant<DP2Params, QRTParams, CustomMap>;

Prime family_prime(const MapFamily& map);

/// phi_n applied to s. DP2 uses the periodic tables.
template <class F>
Point<F> map_step(const MapFamily& map, const Point<F>& s, long n) {
  return std::visit(
      [&](const auto& m) -> Point<F> {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, DP2Params>) {
          return dp2_step(s, n, m);
        } else if constexpr (std::is_same_v<M, QRTParams>) {
          return qrt_step(s, m);
        } else {
          return custom_step(s, n, m);
        }
      },
      map);
}

}  // namespace dp2ff
