#ifndef CHARGE_LADDER_POLY_HPP
#define CHARGE_LADDER_POLY_HPP

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace charge_ladder {

/// Univariate polynomial with exact rational coefficients.
///
/// Coefficients are stored in ascending degree order and trailing zeros are
/// always stripped, so equality is structural and the zero polynomial is the
/// empty coefficient list. degree() of the zero polynomial is kZeroDegree,
/// standing in for minus infinity.
class ExactPoly {
public:
  static constexpr long kZeroDegree = -1;

  ExactPoly() = default;
  explicit ExactPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
  }
  ExactPoly(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

  static ExactPoly constant(const Rational& c) { return ExactPoly(std::vector<Rational>{c}); }
  static ExactPoly monomial(const Rational& c, std::size_t degree) {
    std::vector<Rational> v(degree + 1);
    v[degree] = c;
    return ExactPoly(std::move(v));
  }
  static ExactPoly z() { return monomial(Rational(1), 1); }

  bool is_zero() const { return coeffs_.empty(); }
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  Rational coeff(std::size_t d) const { return d < coeffs_.size() ? coeffs_[d] : Rational(0); }
  Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

  ExactPoly& operator+=(const ExactPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  ExactPoly& operator-=(const ExactPoly& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  ExactPoly& operator*=(const Rational& c) {
    if (c == 0) {
      coeffs_.clear();
      return *this;
    }
    for (auto& a : coeffs_) a *= c;
    return *this;
  }
  ExactPoly& operator*=(const ExactPoly& o) { return *this = *this * o; }

  friend ExactPoly operator+(ExactPoly a, const ExactPoly& b) { return a += b; }
  friend ExactPoly operator-(ExactPoly a, const ExactPoly& b) { return a -= b; }
  friend ExactPoly operator-(ExactPoly a) { return a *= Rational(-1); }
  friend ExactPoly operator*(ExactPoly a, const Rational& c) { return a *= c; }
  friend ExactPoly operator*(const Rational& c, ExactPoly a) { return a *= c; }
  friend ExactPoly operator*(const ExactPoly& a, const ExactPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return ExactPoly(std::move(out));
  }
  friend bool operator==(const ExactPoly& a, const ExactPoly& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const ExactPoly& a, const ExactPoly& b) { return !(a == b); }

private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

struct DivRem {
  ExactPoly quot;
  ExactPoly rem;
};

// a = quot * b + rem with deg rem < deg b.
inline DivRem divrem(const ExactPoly& a, const ExactPoly& b) {
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  if (a.degree() < b.degree()) return {ExactPoly{}, a};
  std::vector<Rational> rem = a.coeffs();
  const std::size_t db = static_cast<std::size_t>(b.degree());
  std::vector<Rational> quot(rem.size() - db);
  const Rational inv_lead = 1 / b.leading();
  for (std::size_t k = quot.size(); k-- > 0;) {
    Rational c = rem[k + db] * inv_lead;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= c * b.coeffs()[j];
    quot[k] = std::move(c);
  }
  rem.resize(db);
  return {ExactPoly(std::move(quot)), ExactPoly(std::move(rem))};
}

// Division that must be exact; a nonzero remainder means an upstream invariant
// was broken.
inline ExactPoly exact_div(const ExactPoly& a, const ExactPoly& b) {
  auto [q, r] = divrem(a, b);
  if (!r.is_zero()) throw InvariantViolation("expected exact polynomial division");
  return q;
}

inline ExactPoly derivative(const ExactPoly& p, unsigned order = 1) {
  std::vector<Rational> c = p.coeffs();
  for (unsigned k = 0; k < order && !c.empty(); ++k) {
    for (std::size_t i = 1; i < c.size(); ++i) c[i - 1] = c[i] * static_cast<long>(i);
    c.pop_back();
  }
  return ExactPoly(std::move(c));
}

// Antiderivative with zero constant term.
inline ExactPoly antiderivative(const ExactPoly& p) {
  if (p.is_zero()) return {};
  std::vector<Rational> c(p.coeffs().size() + 1);
  for (std::size_t i = 0; i < p.coeffs().size(); ++i)
    c[i + 1] = p.coeffs()[i] / Rational(static_cast<long>(i + 1));
  return ExactPoly(std::move(c));
}

inline Rational evaluate(const ExactPoly& p, const Rational& x) {
  Rational acc(0);
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * x + *it;
  return acc;
}

// p(scale * z + shift)
inline ExactPoly compose_linear(const ExactPoly& p, const Rational& scale, const Rational& shift) {
  ExactPoly inner{shift, scale};
  ExactPoly acc;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
    acc = acc * inner + ExactPoly::constant(*it);
  return acc;
}

inline ExactPoly pow(const ExactPoly& p, unsigned exponent) {
  ExactPoly result = ExactPoly::constant(Rational(1));
  ExactPoly base = p;
  while (exponent != 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1;
    if (exponent != 0) base *= base;
  }
  return result;
}

inline ExactPoly make_monic(const ExactPoly& p) {
  if (p.is_zero() || p.is_monic()) return p;
  return p * (1 / p.leading());
}

/// Monic greatest common divisor. gcd(a, 0) = monic(a).
inline ExactPoly gcd(ExactPoly a, ExactPoly b) {
  if (a.is_zero() && b.is_zero()) throw UndefinedGcd("gcd of two zero polynomials");
  while (!b.is_zero()) {
    ExactPoly r = divrem(a, b).rem;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a);
}

struct ExtendedGcd {
  ExactPoly g; // monic
  ExactPoly s; // s*a + t*b = g
  ExactPoly t;
};

inline ExtendedGcd extended_gcd(const ExactPoly& a, const ExactPoly& b) {
  if (a.is_zero() && b.is_zero()) throw UndefinedGcd("gcd of two zero polynomials");
  ExactPoly r0 = a, r1 = b;
  ExactPoly s0 = ExactPoly::constant(Rational(1)), s1;
  ExactPoly t0, t1 = ExactPoly::constant(Rational(1));
  while (!r1.is_zero()) {
    auto [q, r] = divrem(r0, r1);
    ExactPoly s2 = s0 - q * s1;
    ExactPoly t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const Rational inv = 1 / r0.leading();
  return {r0 * inv, s0 * inv, t0 * inv};
}

/// Inverse of a modulo m; requires gcd(a, m) = 1.
inline ExactPoly inverse_mod(const ExactPoly& a, const ExactPoly& m) {
  auto eg = extended_gcd(divrem(a, m).rem, m);
  if (eg.g.degree() != 0) throw NotCoprime("polynomial has no inverse modulo the given modulus");
  return divrem(eg.s, m).rem;
}

inline bool is_squarefree(const ExactPoly& p) {
  if (p.degree() <= 0) return !p.is_zero();
  return gcd(p, derivative(p)).degree() == 0;
}

inline bool are_coprime(const ExactPoly& a, const ExactPoly& b) { return gcd(a, b).degree() == 0; }

/// Product of (z - r) over the given roots.
inline ExactPoly from_roots(const std::vector<Rational>& roots) {
  ExactPoly acc = ExactPoly::constant(Rational(1));
  for (const auto& r : roots) acc *= ExactPoly{-r, Rational(1)};
  return acc;
}

/// Unique polynomial of degree < xs.size() through the given points (Newton
/// divided differences, exact).
inline ExactPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  if (xs.size() != ys.size()) throw InvariantViolation("interpolate: size mismatch");
  const std::size_t n = xs.size();
  std::vector<Rational> dd = ys;
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t i = n - 1; i >= level; --i) {
      const Rational dx = xs[i] - xs[i - level];
      if (dx == 0) throw DivisionByZero("interpolate: repeated abscissa");
      dd[i] = (dd[i] - dd[i - 1]) / dx;
    }
  ExactPoly acc;
  for (std::size_t i = n; i-- > 0;)
    acc = acc * ExactPoly{-xs[i], Rational(1)} + ExactPoly::constant(dd[i]);
  return acc;
}

inline std::string to_pretty_string(const ExactPoly& p, const std::string& var = "z") {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t d = p.coeffs().size(); d-- > 0;) {
    Rational c = p.coeffs()[d];
    if (c == 0) continue;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    if (d == 0 || c != 1) os << to_pretty_string(c);
    if (d > 0) {
      if (c != 1) os << "*";
      os << var;
      if (d > 1) os << "^" << d;
    }
  }
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const ExactPoly& p) { return os << to_pretty_string(p); }

} // namespace charge_ladder

#endif
