#pragma once

// Exact rationals, p-adic valuation, and reduction onto F_p and P^1(F_p).

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "dp2ff/error.hpp"

namespace dp2ff {

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(const mpz_class& value) : q_(value) {}
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(mpq_class value);

  /// Accepts "-3/7", "4", "+0". Throws ParseError.
  static Rational parse(std::string_view text);

  const mpz_class& num() const { return q_.get_num(); }
  const mpz_class& den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  std::string to_string() const { return q_.get_str(); }

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// An odd prime p >= 3. Construction checks primality by trial division.
class Prime {
 public:
  static constexpr long kMax = 1'000'003;

  explicit Prime(long value);
  long value() const { return value_; }
  friend bool operator==(Prime a, Prime b) { return a.value_ == b.value_; }

 private:
  long value_;
};

/// Integer or +infinity. Used for v_p and for orders of vanishing at eps = 0.
class Valuation {
 public:
  static Valuation infinite() { return Valuation(); }
  static Valuation finite(long v) { return Valuation(v); }

  bool is_infinite() const { return !value_.has_value(); }
  long value() const;  // throws InvalidArgument when infinite

  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b);
  friend Valuation operator+(const Valuation& a, const Valuation& b);

  std::string to_string() const;

 private:
  Valuation() = default;
  explicit Valuation(long v) : value_(v) {}
  std::optional<long> value_;
};

/// Residue class modulo an odd prime; mixing moduli throws ModulusMismatch.
class FpElem {
 public:
  FpElem(long value, Prime p);
  FpElem(const mpz_class& value, Prime p);

  long residue() const { return residue_; }
  Prime modulus() const { return modulus_; }
  long modulus_value() const { return modulus_.value(); }
  bool is_zero() const { return residue_ == 0; }

  FpElem operator-() const;
  FpElem& operator+=(const FpElem& rhs);
  FpElem& operator-=(const FpElem& rhs);
  FpElem& operator*=(const FpElem& rhs);
  FpElem& operator/=(const FpElem& rhs);

  friend FpElem operator+(FpElem a, const FpElem& b) { return a += b; }
  friend FpElem operator-(FpElem a, const FpElem& b) { return a -= b; }
  friend FpElem operator*(FpElem a, const FpElem& b) { return a *= b; }
  friend FpElem operator/(FpElem a, const FpElem& b) { return a /= b; }
  friend bool operator==(const FpElem& a, const FpElem& b) {
    return a.modulus_ == b.modulus_ && a.residue_ == b.residue_;
  }

 private:
  struct Unchecked {};
  FpElem(long residue, Prime modulus, Unchecked) : residue_(residue), modulus_(modulus) {}
  void check_same_field(const FpElem& other) const;
  friend FpElem fp_inv(const FpElem& u);

  long residue_;
  Prime modulus_;
};

/// Point of P^1(F_p): a residue or infinity.
class FpProj {
 public:
  static FpProj infinity() { return FpProj(); }
  static FpProj finite(FpElem e) { return FpProj(e); }
  static FpProj residue(long r, Prime p) { return FpProj(FpElem(r, p)); }

  bool is_infinite() const { return !elem_.has_value(); }
  bool is_finite() const { return elem_.has_value(); }
  const FpElem& elem() const;  // throws InvalidArgument at infinity

  friend bool operator==(const FpProj&, const FpProj&) = default;

  /// Decimal residue or "inf".
  std::string to_string() const;

 private:
  FpProj() = default;
  explicit FpProj(FpElem e) : elem_(e) {}
  std::optional<FpElem> elem_;
};

std::ostream& operator<<(std::ostream& os, const FpProj& x);

Valuation vp(const Rational& x, Prime p);
/// p^{-vp(x)}, and 0 for x = 0.
Rational pnorm(const Rational& x, Prime p);
/// Throws NegativeValuation when vp(x) < 0.
FpElem reduce_mod(const Rational& x, Prime p);
FpProj reduce_proj(const Rational& x, Prime p);
/// Throws DivisionByZero for u = 0.
FpElem fp_inv(const FpElem& u);

/// Integer representative of a residue in (-p/2, p/2]; p-1 lifts to -1.
long symmetric_lift(const FpElem& e);

// Embedding of rational constants into an arithmetic carrier; `like` supplies
// the carrier's context (the modulus for F_p).
inline Rational embed(const Rational& v, const Rational& /*like*/) { return v; }
inline FpElem embed(const Rational& v, const FpElem& like) { return reduce_mod(v, like.modulus()); }

}  // namespace dp2ff
