#pragma once

// Generalized Laguerre polynomials, the Casorati-type tau determinants built
// from them, and the rational dP-II solutions they generate.

#include <vector>

#include "dp2ff/maps.hpp"
#include "dp2ff/numbers.hpp"

namespace dp2ff {

struct TauParams {
  long N = 1;
  Rational lambda = Rational(1);

  /// Throws InvalidArgument for N < 1 or lambda = 0.
  static TauParams make(long N, const Rational& lambda);

  Rational a() const { return Rational(-2 * (N + 1)) / lambda; }
  Rational delta() const { return Rational(2) / lambda; }
  Rational z0() const { return Rational(2) / lambda; }
  ExactCoefficients coefficients() const { return {a(), delta(), z0()}; }
};

/// binom(m, j) = m(m-1)...(m-j+1)/j! for any integer m; 0 for j < 0.
Rational binomial(long m, long j);

/// L_k^{(nu)}(lambda); 0 for k < 0.
Rational laguerre(long k, long nu, const Rational& lambda);

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Row i holds L_{N-2i+j}^{(n)}(lambda), j = 0..N-1.
RationalMatrix tau_matrix(long N, long n, const Rational& lambda);

/// Fraction-free (Bareiss) elimination on the row-scaled integer matrix.
Rational det_bareiss(const RationalMatrix& m);
/// Laplace expansion along the first row; reference for small sizes.
Rational det_cofactor(const RationalMatrix& m);

Rational tau_det(long N, long n, const Rational& lambda);

/// tau_{N+1}^{n+1} tau_N^{n-1} / (tau_{N+1}^n tau_N^n) - 1.
/// Throws ZeroTauDenominator when the denominator vanishes over Q.
Rational rational_u(long n, const TauParams& params);

struct TauCondition {
  /// tau_{N+1}^{-N-1} tau_N^{-N-3}, superscripts taken mod p, reduced.
  FpProj diag_product = FpProj::infinity();
  /// tau_{N+1}^{N+1} tau_N^{N-1} / (tau_{N+1}^N tau_N^N), superscripts mod p, reduced.
  FpProj diag_ratio = FpProj::infinity();
  bool product_nonzero = false;  // diag_product != 0
  bool ratio_not_two = false;    // diag_ratio != 2
};

TauCondition taucond(const TauParams& params, Prime p);

/// The dP-II tables (a, delta, z0 of the tau family) modulo p.
DP2Params tau_dp2_params(const TauParams& params, Prime p);

/// reduce_proj(u_1), ..., reduce_proj(u_count). OpenMP-parallel over the tau values.
std::vector<FpProj> reduced_solution(const TauParams& params, Prime p, long count);
/// Reference implementation; same output as reduced_solution.
std::vector<FpProj> reduced_solution_serial(const TauParams& params, Prime p, long count);

}  // namespace dp2ff
