#ifndef CHARGE_LADDER_RATIONAL_HPP
#define CHARGE_LADDER_RATIONAL_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <cctype>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace charge_ladder {

// Arbitrary-precision rational, always kept in lowest terms with a positive
// denominator. gmpxx canonicalizes after every arithmetic operation; only
// direct construction from a numerator/denominator pair needs canonicalize().
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw DivisionByZero("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "<int>" or "<int>/<posint>" with optional leading sign on the
// numerator only. Whitespace is not allowed.
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view unsigned_num = num;
  if (!unsigned_num.empty() && (unsigned_num[0] == '-' || unsigned_num[0] == '+'))
    unsigned_num.remove_prefix(1);
  if (!digits(unsigned_num))
    throw ParseError("malformed rational '" + std::string(text) + "'");
  std::string num_str(num[0] == '+' ? num.substr(1) : num);
  Integer n(num_str, 10);
  Integer d(1);
  if (slash != std::string_view::npos) {
    std::string_view den = text.substr(slash + 1);
    if (!digits(den))
      throw ParseError("malformed rational '" + std::string(text) + "'");
    d = Integer(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  }
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// Canonical wire form: always "<num>/<den>" in lowest terms, e.g. "3/1".
inline std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Human-oriented form: integers print without the "/1".
inline std::string to_pretty_string(const Rational& r) {
  return r.get_den() == 1 ? r.get_num().get_str() : r.get_str();
}

namespace detail {
struct MpfrScratch {
  mpfr_t value;
  explicit MpfrScratch(mpfr_prec_t prec) { mpfr_init2(value, prec); }
  ~MpfrScratch() { mpfr_clear(value); }
  MpfrScratch(const MpfrScratch&) = delete;
  MpfrScratch& operator=(const MpfrScratch&) = delete;
};
} // namespace detail

// Correctly rounded (round-to-nearest) conversions. mpq_get_d truncates, so it
// is not used here.
inline double to_double(const Rational& r) {
  detail::MpfrScratch s(53);
  mpfr_set_q(s.value, r.get_mpq_t(), MPFR_RNDN);
  return mpfr_get_d(s.value, MPFR_RNDN);
}

inline long double to_long_double(const Rational& r) {
  detail::MpfrScratch s(64);
  mpfr_set_q(s.value, r.get_mpq_t(), MPFR_RNDN);
  return mpfr_get_ld(s.value, MPFR_RNDN);
}

namespace detail {
inline Rational upow(const Rational& base, unsigned long exponent) {
  Rational result(1);
  Rational b = base;
  while (exponent != 0) {
    if (exponent & 1UL) result *= b;
    b *= b;
    exponent >>= 1;
  }
  return result;
}
} // namespace detail

// Signed powers; throws DivisionByZero for 0^negative.
inline Rational pow(const Rational& base, long exponent) {
  if (exponent >= 0) return detail::upow(base, static_cast<unsigned long>(exponent));
  if (base == 0) throw DivisionByZero("zero raised to a negative power");
  Rational inv = 1 / base;
  return detail::upow(inv, static_cast<unsigned long>(-exponent));
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

} // namespace charge_ladder

#endif
