#include "dp2ff/epsfield.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace dp2ff {

// ---------------------------------------------------------------- EpsPoly

EpsPoly::EpsPoly(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }

EpsPoly EpsPoly::constant(const Rational& c) { return EpsPoly(std::vector<Rational>{c}); }

void EpsPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

long EpsPoly::low_order() const {
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i].is_zero()) return static_cast<long>(i);
  }
  return -1;
}

Rational EpsPoly::coefficient(long i) const {
  return i >= 0 && i < static_cast<long>(c_.size()) ? c_[static_cast<std::size_t>(i)]
                                                     : Rational(0);
}

EpsPoly EpsPoly::operator-() const {
  EpsPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

EpsPoly operator+(const EpsPoly& a, const EpsPoly& b) {
  std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
  return EpsPoly(std::move(out));
}

EpsPoly operator-(const EpsPoly& a, const EpsPoly& b) { return a + (-b); }

EpsPoly operator*(const EpsPoly& a, const EpsPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> acc(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) acc[i + j] += a.c_[i].raw() * b.c_[j].raw();
  }
  std::vector<Rational> out;
  out.reserve(acc.size());
  for (auto& v : acc) out.emplace_back(std::move(v));
  return EpsPoly(std::move(out));
}

EpsPoly EpsPoly::scaled(const Rational& s) const {
  if (s.is_zero()) return {};
  EpsPoly r = *this;
  for (auto& c : r.c_) c *= s;
  return r;
}

void EpsPoly::divmod(const EpsPoly& a, const EpsPoly& b, EpsPoly& quotient, EpsPoly& remainder) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  std::vector<Rational> rem = a.c_;
  const long db = b.degree();
  const long da = a.degree();
  std::vector<Rational> q(da >= db ? static_cast<std::size_t>(da - db + 1) : 0);
  const Rational inv_lead = Rational(1) / b.leading();
  for (long k = da - db; k >= 0; --k) {
    const auto top = static_cast<std::size_t>(k + db);
    if (rem[top].is_zero()) continue;
    const Rational factor = rem[top] * inv_lead;
    q[static_cast<std::size_t>(k)] = factor;
    for (long j = 0; j <= db; ++j) {
      rem[static_cast<std::size_t>(k + j)] -= factor * b.c_[static_cast<std::size_t>(j)];
    }
  }
  quotient = EpsPoly(std::move(q));
  remainder = EpsPoly(std::move(rem));
}

// Monic remainder sequence: normalizing each remainder keeps the rational
// coefficients from growing the way a plain Euclidean sequence does.
EpsPoly EpsPoly::gcd(EpsPoly a, EpsPoly b) {
  if (!a.is_zero()) a = a.scaled(Rational(1) / a.leading());
  if (!b.is_zero()) b = b.scaled(Rational(1) / b.leading());
  while (!b.is_zero()) {
    EpsPoly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = r.is_zero() ? std::move(r) : r.scaled(Rational(1) / r.leading());
  }
  return a;
}

Rational EpsPoly::evaluate(const Rational& at) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + *it;
  return acc;
}

namespace {

// Images in F_q, q = 2^61 - 1, used to detect coprime pairs without running
// the exact remainder sequence over Q.
using u64 = unsigned long long;
constexpr u64 kQ = (1ULL << 61) - 1;

u64 mul_q(u64 a, u64 b) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % kQ); }

u64 inv_q(u64 a) {
  u64 result = 1, e = kQ - 2;
  while (e) {
    if (e & 1) result = mul_q(result, a);
    a = mul_q(a, a);
    e >>= 1;
  }
  return result;
}

// Coefficient images, or empty when a denominator vanishes mod q or the
// degree drops.
std::vector<u64> image_q(const EpsPoly& p) {
  std::vector<u64> out;
  out.reserve(p.coefficients().size());
  for (const auto& c : p.coefficients()) {
    const u64 d = mpz_fdiv_ui(c.den().get_mpz_t(), kQ);
    if (d == 0) return {};
    out.push_back(mul_q(mpz_fdiv_ui(c.num().get_mpz_t(), kQ), inv_q(d)));
  }
  if (!out.empty() && out.back() == 0) return {};
  return out;
}

void trim_q(std::vector<u64>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

bool coprime_mod_q(const EpsPoly& a, const EpsPoly& b) {
  std::vector<u64> x = image_q(a), y = image_q(b);
  if (x.empty() || y.empty()) return false;
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    const u64 inv = inv_q(y.back());
    while (x.size() >= y.size()) {
      const u64 f = mul_q(x.back(), inv);
      const std::size_t shift = x.size() - y.size();
      for (std::size_t j = 0; j < y.size(); ++j) {
        x[shift + j] = (x[shift + j] + kQ - mul_q(f, y[j])) % kQ;
      }
      trim_q(x);
      if (x.empty()) break;
    }
    std::swap(x, y);
  }
  return x.size() == 1;
}

}  // namespace

// ---------------------------------------------------------------- EpsRational

EpsRational::EpsRational(EpsPoly num, EpsPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorCode::DivisionByZero, "eps-rational with zero denominator");
  canonicalize();
}

void EpsRational::canonicalize() {
  if (num_.is_zero()) {
    den_ = EpsPoly::constant(Rational(1));
    return;
  }
  const long shared = std::min(num_.low_order(), den_.low_order());
  if (shared > 0) {
    num_ = EpsPoly(std::vector<Rational>(num_.coefficients().begin() + shared,
                                         num_.coefficients().end()));
    den_ = EpsPoly(std::vector<Rational>(den_.coefficients().begin() + shared,
                                         den_.coefficients().end()));
  }
  if (den_.degree() > 0 && num_.degree() > 0 && !coprime_mod_q(num_, den_)) {
    const EpsPoly g = EpsPoly::gcd(num_, den_);
    if (g.degree() > 0) {
      EpsPoly q, r;
      EpsPoly::divmod(num_, g, q, r);
      num_ = std::move(q);
      EpsPoly::divmod(den_, g, q, r);
      den_ = std::move(q);
    }
  }
  const Rational lead = den_.leading();
  if (lead != Rational(1)) {
    const Rational inv = Rational(1) / lead;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

EpsRational EpsRational::operator-() const {
  EpsRational r = *this;
  r.num_ = -r.num_;
  return r;
}

EpsRational operator+(const EpsRational& a, const EpsRational& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return EpsRational(a.num_ + b.num_, a.den_);
  return EpsRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

EpsRational operator-(const EpsRational& a, const EpsRational& b) { return a + (-b); }

EpsRational operator*(const EpsRational& a, const EpsRational& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return EpsRational(a.num_ * b.num_, a.den_ * b.den_);
}

EpsRational operator/(const EpsRational& a, const EpsRational& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero eps-function");
  if (a.is_zero()) return {};
  return EpsRational(a.num_ * b.den_, a.den_ * b.num_);
}

Rational EpsRational::substitute(const Rational& c) const {
  return num_.evaluate(c) / den_.evaluate(c);
}

namespace {

std::string poly_string(const EpsPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  const auto& c = p.coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << c[i];
    if (i == 1) os << "*e";
    if (i > 1) os << "*e^" << i;
  }
  return os.str();
}

}  // namespace

std::string EpsRational::to_string() const {
  return "(" + poly_string(num_) + ")/(" + poly_string(den_) + ")";
}

std::ostream& operator<<(std::ostream& os, const EpsRational& f) { return os << f.to_string(); }

Valuation ord0(const EpsRational& f) {
  if (f.is_zero()) return Valuation::infinite();
  return Valuation::finite(f.num().low_order() - f.den().low_order());
}

Rational eval0(const EpsRational& f) {
  const Valuation order = ord0(f);
  if (order.is_infinite() || order.value() > 0) return Rational(0);
  if (order.value() < 0) throw Error(ErrorCode::PoleAtZero, "pole at eps = 0: " + f.to_string());
  return f.num().coefficient(f.num().low_order()) / f.den().coefficient(f.den().low_order());
}

void enforce_degree_bound(const EpsRational& f, long bound) {
  if (f.max_degree() > bound) {
    throw Error(ErrorCode::DegreeOverflow, "eps-rational degree " + std::to_string(f.max_degree()) +
                                               " exceeds bound " + std::to_string(bound));
  }
}

}  // namespace dp2ff
