#pragma once

// Rational functions in one formal parameter eps over Q. Stands in for the
// p-adic infinitesimal e*p^k when taking confinement limits.

#include <string>
#include <vector>

#include "dp2ff/numbers.hpp"

namespace dp2ff {

/// Polynomial in eps; coefficient i multiplies eps^i. Trailing zeros are
/// stripped, so the zero polynomial has no coefficients.
class EpsPoly {
 public:
  EpsPoly() = default;
  explicit EpsPoly(std::vector<Rational> coefficients);
  static EpsPoly constant(const Rational& c);
  static EpsPoly eps() { return EpsPoly({Rational(0), Rational(1)}); }

  const std::vector<Rational>& coefficients() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  /// Index of the lowest nonzero coefficient; -1 for zero.
  long low_order() const;
  const Rational& leading() const { return c_.back(); }
  Rational coefficient(long i) const;

  EpsPoly operator-() const;
  friend EpsPoly operator+(const EpsPoly& a, const EpsPoly& b);
  friend EpsPoly operator-(const EpsPoly& a, const EpsPoly& b);
  friend EpsPoly operator*(const EpsPoly& a, const EpsPoly& b);
  EpsPoly scaled(const Rational& s) const;

  /// Euclidean division over Q; throws DivisionByZero for a zero divisor.
  static void divmod(const EpsPoly& a, const EpsPoly& b, EpsPoly& quotient, EpsPoly& remainder);
  /// Monic gcd (zero when both inputs are zero).
  static EpsPoly gcd(EpsPoly a, EpsPoly b);

  Rational evaluate(const Rational& at) const;

  friend bool operator==(const EpsPoly&, const EpsPoly&) = default;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// num/den with gcd(num, den) = 1 and den monic. Zero is 0/1.
class EpsRational {
 public:
  EpsRational() : den_(EpsPoly::constant(Rational(1))) {}
  EpsRational(const Rational& c)  // NOLINT(google-explicit-constructor)
      : num_(EpsPoly::constant(c)), den_(EpsPoly::constant(Rational(1))) {}
  EpsRational(EpsPoly num, EpsPoly den);

  static EpsRational eps() { return EpsRational(EpsPoly::eps(), EpsPoly::constant(Rational(1))); }

  const EpsPoly& num() const { return num_; }
  const EpsPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  long max_degree() const { return std::max(num_.degree(), den_.degree()); }

  EpsRational operator-() const;
  friend EpsRational operator+(const EpsRational& a, const EpsRational& b);
  friend EpsRational operator-(const EpsRational& a, const EpsRational& b);
  friend EpsRational operator*(const EpsRational& a, const EpsRational& b);
  /// Throws DivisionByZero when b is the zero function.
  friend EpsRational operator/(const EpsRational& a, const EpsRational& b);

  friend bool operator==(const EpsRational&, const EpsRational&) = default;

  /// Value at eps = c (exact). Throws DivisionByZero when den(c) = 0.
  Rational substitute(const Rational& c) const;

  /// "(c0 + c1*e + c2*e^2)/(d0 + d1*e)"; debugging only.
  std::string to_string() const;

 private:
  void canonicalize();
  EpsPoly num_;
  EpsPoly den_;
};

std::ostream& operator<<(std::ostream& os, const EpsRational& f);

/// Order of vanishing at eps = 0; negative for a pole, +inf for zero.
Valuation ord0(const EpsRational& f);
/// f(0). Throws PoleAtZero when ord0(f) < 0.
Rational eval0(const EpsRational& f);
/// Throws DegreeOverflow when num or den exceeds `bound`.
void enforce_degree_bound(const EpsRational& f, long bound);

inline EpsRational embed(const Rational& v, const EpsRational& /*like*/) { return EpsRational(v); }

}  // namespace dp2ff
