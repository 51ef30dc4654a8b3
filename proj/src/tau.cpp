#include "dp2ff/tau.hpp"

#include <exception>
#include <utility>

#include <omp.h>

namespace dp2ff {

TauParams TauParams::make(long N, const Rational& lambda) {
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "N must be a positive integer");
  if (lambda.is_zero()) throw Error(ErrorCode::InvalidArgument, "lambda must be nonzero");
  return {N, lambda};
}

Rational binomial(long m, long j) {
  if (j < 0) return Rational(0);
  mpz_class num = 1, den = 1;
  for (long i = 0; i < j; ++i) {
    num *= m - i;
    den *= i + 1;
  }
  return Rational(num, den);
}

Rational laguerre(long k, long nu, const Rational& lambda) {
  if (k < 0) return Rational(0);
  Rational sum(0);
  Rational power(1);      // lambda^r
  mpz_class factorial = 1;  // r!
  for (long r = 0; r <= k; ++r) {
    if (r > 0) {
      power *= lambda;
      factorial *= r;
    }
    Rational t = binomial(k + nu, k - r) * power / Rational(factorial);
    if (r % 2 == 1) t = -t;
    sum += t;
  }
  return sum;
}

RationalMatrix tau_matrix(long N, long n, const Rational& lambda) {
  RationalMatrix m(static_cast<std::size_t>(N));
  for (long i = 0; i < N; ++i) {
    auto& row = m[static_cast<std::size_t>(i)];
    row.reserve(static_cast<std::size_t>(N));
    for (long j = 0; j < N; ++j) row.push_back(laguerre(N - 2 * i + j, n, lambda));
  }
  return m;
}

Rational det_bareiss(const RationalMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return Rational(1);
  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
  mpz_class scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class l = 1;
    for (const auto& v : m[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.den().get_mpz_t());
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j].num() * (l / m[i][j].den());
    scale *= l;
  }
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return Rational(0);
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return Rational(sign * a[n - 1][n - 1], scale);
}

Rational det_cofactor(const RationalMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return Rational(1);
  if (n == 1) return m[0][0];
  Rational det(0);
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    RationalMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Rational> row;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != c) row.push_back(m[r][j]);
      }
      minor.push_back(std::move(row));
    }
    const Rational t = m[0][c] * det_cofactor(minor);
    det += c % 2 == 0 ? t : -t;
  }
  return det;
}

Rational tau_det(long N, long n, const Rational& lambda) {
  if (N < 1) throw Error(ErrorCode::InvalidArgument, "tau order must be >= 1");
  return det_bareiss(tau_matrix(N, n, lambda));
}

namespace {

Rational solution_from(const Rational& big_next, const Rational& small_prev,
                       const Rational& big_cur, const Rational& small_cur, long n) {
  const Rational den = big_cur * small_cur;
  if (den.is_zero()) {
    throw Error(ErrorCode::ZeroTauDenominator,
                "tau denominator vanishes at n = " + std::to_string(n));
  }
  return big_next * small_prev / den - Rational(1);
}

void require_unit_lambda(const TauParams& params, Prime p) {
  if (vp(params.lambda, p) != Valuation::finite(0)) {
    throw Error(ErrorCode::NonIntegralParameter,
                "lambda = " + params.lambda.to_string() + " is not a " +
                    std::to_string(p.value()) + "-adic unit");
  }
}

long mod(long v, long p) { return ((v % p) + p) % p; }

}  // namespace

Rational rational_u(long n, const TauParams& params) {
  const long N = params.N;
  const Rational& l = params.lambda;
  return solution_from(tau_det(N + 1, n + 1, l), tau_det(N, n - 1, l), tau_det(N + 1, n, l),
                       tau_det(N, n, l), n);
}

TauCondition taucond(const TauParams& params, Prime p) {
  const long N = params.N;
  const long P = p.value();
  const Rational& l = params.lambda;
  TauCondition c;
  c.diag_product =
      reduce_proj(tau_det(N + 1, mod(-N - 1, P), l) * tau_det(N, mod(-N - 3, P), l), p);

  const Rational num = tau_det(N + 1, mod(N + 1, P), l) * tau_det(N, mod(N - 1, P), l);
  const Rational den = tau_det(N + 1, mod(N, P), l) * tau_det(N, mod(N, P), l);
  if (den.is_zero()) {
    if (num.is_zero()) {
      throw Error(ErrorCode::ZeroTauDenominator, "condition ratio is 0/0 over Q");
    }
    c.diag_ratio = FpProj::infinity();
  } else {
    c.diag_ratio = reduce_proj(num / den, p);
  }
  c.product_nonzero = c.diag_product != FpProj::residue(0, p);
  c.ratio_not_two = c.diag_ratio != FpProj::residue(2, p);
  return c;
}

DP2Params tau_dp2_params(const TauParams& params, Prime p) {
  require_unit_lambda(params, p);
  return build_dp2_params(p, params.a(), params.delta(), params.z0());
}

namespace {

void check_count(long count) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "count must be >= 1");
}

// taus[0][i] = tau_N^i, taus[1][i] = tau_{N+1}^i for i = 0..count+1.
std::vector<FpProj> assemble(Prime p, long count,
                             const std::vector<Rational> (&taus)[2]) {
  std::vector<FpProj> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long n = 1; n <= count; ++n) {
    const auto i = static_cast<std::size_t>(n);
    out.push_back(reduce_proj(
        solution_from(taus[1][i + 1], taus[0][i - 1], taus[1][i], taus[0][i], n), p));
  }
  return out;
}

}  // namespace

std::vector<FpProj> reduced_solution_serial(const TauParams& params, Prime p, long count) {
  require_unit_lambda(params, p);
  check_count(count);
  std::vector<Rational> taus[2];
  for (int which = 0; which < 2; ++which) {
    for (long i = 0; i <= count + 1; ++i) {
      taus[which].push_back(tau_det(params.N + which, i, params.lambda));
    }
  }
  return assemble(p, count, taus);
}

std::vector<FpProj> reduced_solution(const TauParams& params, Prime p, long count) {
  require_unit_lambda(params, p);
  check_count(count);
  const long width = count + 2;
  std::vector<Rational> taus[2] = {std::vector<Rational>(static_cast<std::size_t>(width)),
                                   std::vector<Rational>(static_cast<std::size_t>(width))};
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (long task = 0; task < 2 * width; ++task) {
    const long which = task / width;
    const long i = task % width;
    try {
      taus[which][static_cast<std::size_t>(i)] = tau_det(params.N + which, i, params.lambda);
    } catch (...) {
#pragma omp critical(dp2ff_tau_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return assemble(p, count, taus);
}

}  // namespace dp2ff
