#include "dp2ff/maps.hpp"

namespace dp2ff {

namespace {

void require_integral(const Rational& v, Prime p, const char* name) {
  if (vp(v, p) < Valuation::finite(0)) {
    throw Error(ErrorCode::NonIntegralParameter,
                std::string(name) + " = " + v.to_string() + " has negative " +
                    std::to_string(p.value()) + "-adic valuation");
  }
}

struct Table {
  Rational shift;
  std::vector<Rational> values;
  bool has_zero = false;
};

// values[i] = (numerators[i] + shift*p)/2 with shift chosen so the first
// residue-zero entry is exactly zero. Further residue-zero entries (only when
// the slope vanishes mod p) are set to exact zero directly.
Table place_zero(const std::vector<Rational>& numerators, Prime p, ZeroPlacement placement,
                 const char* name) {
  Table t;
  const std::size_t size = numerators.size();
  std::size_t zero_at = size;
  for (std::size_t i = 0; i < size; ++i) {
    if (reduce_mod(numerators[i], p).is_zero()) {
      zero_at = i;
      break;
    }
  }
  if (zero_at == size) {
    if (placement == ZeroPlacement::kRequired) {
      throw Error(ErrorCode::NoExactZero,
                  std::string("no index gives a zero of ") + name + " modulo " +
                      std::to_string(p.value()));
    }
    t.shift = Rational(0);
  } else {
    t.shift = -numerators[zero_at] / Rational(p.value());
    t.has_zero = true;
  }
  const Rational offset = t.shift * Rational(p.value());
  t.values.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    Rational v = (numerators[i] + offset) / Rational(2);
    if (reduce_mod(v, p).is_zero()) v = Rational(0);
    t.values.push_back(std::move(v));
  }
  return t;
}

}  // namespace

std::size_t DP2Params::index(long n) const {
  const long m = p.value();
  long r = n % m;
  if (r < 0) r += m;
  return static_cast<std::size_t>(r);
}

DP2Params build_dp2_params(Prime p, const Rational& a, const Rational& delta, const Rational& z0,
                           ZeroPlacement placement) {
  require_integral(a, p, "a");
  require_integral(delta, p, "delta");
  require_integral(z0, p, "z0");

  std::vector<Rational> alpha_num, beta_num;
  for (long i = 0; i < p.value(); ++i) {
    const Rational z = delta * Rational(i) + z0;
    alpha_num.push_back(z + a);
    beta_num.push_back(a - z);
  }
  Table alpha = place_zero(alpha_num, p, placement, "alpha");
  Table beta = place_zero(beta_num, p, placement, "beta");

  DP2Params params{p, a, delta, z0, alpha.shift, beta.shift, std::move(alpha.values),
                   std::move(beta.values), alpha.has_zero, beta.has_zero};
  return params;
}

Rational dp2_scalar_residual(const Rational& u_prev, const Rational& u, const Rational& u_next,
                             long n, const ExactCoefficients& params) {
  const Rational rhs = (params.z(n) * u + params.a) / (Rational(1) - u * u);
  return u_next + u_prev - rhs;
}

QRTParams build_qrt_params(Prime p, long gamma, const Rational& a, bool allow_zero_a) {
  if (gamma < 0) throw Error(ErrorCode::InvalidArgument, "gamma must be nonnegative");
  if (!a.is_integer() || a.sign() < 0 || a >= Rational(p.value()) ||
      (a.is_zero() && !allow_zero_a)) {
    throw Error(ErrorCode::InvalidArgument,
                "QRT parameter a = " + a.to_string() + " must lie in {1, ..., p-1}");
  }
  return {p, static_cast<unsigned>(gamma), a};
}

Prime family_prime(const MapFamily& map) {
  return std::visit([](const auto& m) { return m.p; }, map);
}

}  // namespace dp2ff
