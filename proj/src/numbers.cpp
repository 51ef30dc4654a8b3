#include "dp2ff/numbers.hpp"

#include <cctype>

namespace dp2ff {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidPrime: return "INVALID_PRIME";
    case ErrorCode::NegativeValuation: return "NEGATIVE_VALUATION";
    case ErrorCode::DivisionByZero: return "DIVISION_BY_ZERO";
    case ErrorCode::ModulusMismatch: return "MODULUS_MISMATCH";
    case ErrorCode::PoleAtZero: return "POLE_AT_ZERO";
    case ErrorCode::DegreeOverflow: return "DEGREE_OVERFLOW";
    case ErrorCode::NoExactZero: return "NO_EXACT_ZERO";
    case ErrorCode::NonIntegralParameter: return "NON_INTEGRAL_PARAMETER";
    case ErrorCode::InfiniteInitial: return "INFINITE_INITIAL";
    case ErrorCode::UndefinedCase: return "UNDEFINED_CASE";
    case ErrorCode::ZeroTauDenominator: return "ZERO_TAU_DENOMINATOR";
    case ErrorCode::NoPeriodFound: return "NO_PERIOD_FOUND";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN";
}

// ---------------------------------------------------------------- Rational

Rational::Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
  q_.canonicalize();
}

Rational::Rational(mpq_class value) : q_(std::move(value)) { q_.canonicalize(); }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  const auto slash = s.find('/');
  const std::string_view num_part = s.substr(0, slash);
  const std::string_view den_part =
      slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!all_digits(num_part) || !all_digits(den_part)) {
    throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(text) + "'");
  }
  mpz_class num(std::string(num_part), 10);
  mpz_class den(std::string(den_part), 10);
  if (negative) num = -num;
  return Rational(num, den);
}

Rational& Rational::operator+=(const Rational& rhs) {
  q_ += rhs.q_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  q_ -= rhs.q_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  q_ *= rhs.q_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw Error(ErrorCode::DivisionByZero, "rational division by zero");
  q_ /= rhs.q_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

// ---------------------------------------------------------------- Prime

Prime::Prime(long value) : value_(value) {
  if (value == 2) throw Error(ErrorCode::InvalidPrime, "p = 2 is not supported; p must be >= 3");
  if (value < 3 || value > kMax) {
    throw Error(ErrorCode::InvalidPrime, "p = " + std::to_string(value) + " outside [3, " +
                                             std::to_string(kMax) + "]");
  }
  for (long d = 2; d * d <= value; ++d) {
    if (value % d == 0) {
      throw Error(ErrorCode::InvalidPrime, std::to_string(value) + " is not prime");
    }
  }
}

// ---------------------------------------------------------------- Valuation

long Valuation::value() const {
  if (!value_) throw Error(ErrorCode::InvalidArgument, "valuation is +infinity");
  return *value_;
}

std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
  if (a.is_infinite() || b.is_infinite()) {
    return a.is_infinite() <=> b.is_infinite();
  }
  return *a.value_ <=> *b.value_;
}

Valuation operator+(const Valuation& a, const Valuation& b) {
  if (a.is_infinite() || b.is_infinite()) return Valuation::infinite();
  return Valuation::finite(*a.value_ + *b.value_);
}

std::string Valuation::to_string() const {
  return value_ ? std::to_string(*value_) : std::string("+inf");
}

// ---------------------------------------------------------------- FpElem

namespace {

long mod_floor(long v, long p) {
  long r = v % p;
  return r < 0 ? r + p : r;
}

long mod_floor(const mpz_class& v, long p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(p));
  return r.get_si();
}

long mul_mod(long a, long b, long p) {
  return static_cast<long>((static_cast<__int128>(a) * b) % p);
}

}  // namespace

FpElem::FpElem(long value, Prime p) : residue_(mod_floor(value, p.value())), modulus_(p) {}

FpElem::FpElem(const mpz_class& value, Prime p)
    : residue_(mod_floor(value, p.value())), modulus_(p) {}

void FpElem::check_same_field(const FpElem& other) const {
  if (modulus_ != other.modulus_) {
    throw Error(ErrorCode::ModulusMismatch, "F_" + std::to_string(modulus_.value()) +
                                                " vs F_" + std::to_string(other.modulus_.value()));
  }
}

FpElem FpElem::operator-() const {
  return FpElem(residue_ == 0 ? 0 : modulus_.value() - residue_, modulus_, Unchecked{});
}

FpElem& FpElem::operator+=(const FpElem& rhs) {
  check_same_field(rhs);
  residue_ += rhs.residue_;
  if (residue_ >= modulus_.value()) residue_ -= modulus_.value();
  return *this;
}

FpElem& FpElem::operator-=(const FpElem& rhs) {
  check_same_field(rhs);
  residue_ -= rhs.residue_;
  if (residue_ < 0) residue_ += modulus_.value();
  return *this;
}

FpElem& FpElem::operator*=(const FpElem& rhs) {
  check_same_field(rhs);
  residue_ = mul_mod(residue_, rhs.residue_, modulus_.value());
  return *this;
}

FpElem& FpElem::operator/=(const FpElem& rhs) {
  check_same_field(rhs);
  return *this *= fp_inv(rhs);
}

FpElem fp_inv(const FpElem& u) {
  if (u.residue_ == 0) throw Error(ErrorCode::DivisionByZero, "inverse of 0 in F_p");
  // Extended Euclid on (residue, p).
  long r0 = u.modulus_.value(), r1 = u.residue_;
  long t0 = 0, t1 = 1;
  while (r1 != 0) {
    const long q = r0 / r1;
    long tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  return FpElem(mod_floor(t0, u.modulus_.value()), u.modulus_, FpElem::Unchecked{});
}

long symmetric_lift(const FpElem& e) {
  const long p = e.modulus_value();
  return e.residue() > p / 2 ? e.residue() - p : e.residue();
}

// ---------------------------------------------------------------- FpProj

const FpElem& FpProj::elem() const {
  if (!elem_) throw Error(ErrorCode::InvalidArgument, "point at infinity has no residue");
  return *elem_;
}

std::string FpProj::to_string() const {
  return elem_ ? std::to_string(elem_->residue()) : std::string("inf");
}

std::ostream& operator<<(std::ostream& os, const FpProj& x) { return os << x.to_string(); }

// ---------------------------------------------------------------- reductions

namespace {

long strip_prime(mpz_class value, long p) {
  long count = 0;
  const unsigned long up = static_cast<unsigned long>(p);
  while (mpz_divisible_ui_p(value.get_mpz_t(), up)) {
    mpz_divexact_ui(value.get_mpz_t(), value.get_mpz_t(), up);
    ++count;
  }
  return count;
}

}  // namespace

Valuation vp(const Rational& x, Prime p) {
  if (x.is_zero()) return Valuation::infinite();
  // Canonical form: p divides at most one of numerator and denominator.
  return Valuation::finite(strip_prime(x.num(), p.value()) - strip_prime(x.den(), p.value()));
}

Rational pnorm(const Rational& x, Prime p) {
  const Valuation v = vp(x, p);
  if (v.is_infinite()) return Rational(0);
  mpz_class power;
  mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(p.value()),
                static_cast<unsigned long>(v.value() < 0 ? -v.value() : v.value()));
  return v.value() >= 0 ? Rational(mpz_class(1), power) : Rational(power);
}

FpElem reduce_mod(const Rational& x, Prime p) {
  if (vp(x, p) < Valuation::finite(0)) {
    throw Error(ErrorCode::NegativeValuation,
                x.to_string() + " is not a p-adic integer for p = " + std::to_string(p.value()));
  }
  return FpElem(x.num(), p) / FpElem(x.den(), p);
}

FpProj reduce_proj(const Rational& x, Prime p) {
  if (vp(x, p) < Valuation::finite(0)) return FpProj::infinity();
  return FpProj::finite(reduce_mod(x, p));
}

}  // namespace dp2ff
