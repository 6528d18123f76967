#ifndef CHARGE_LADDER_TESTS_CLOSED_FORMS_HPP
#define CHARGE_LADDER_TESTS_CLOSED_FORMS_HPP

// Closed forms of the low-order families, evaluated at rational
// parameter bindings.

#include "charge_ladder/poly.hpp"

namespace charge_ladder::testing::tables {

inline ExactPoly coeffs(std::vector<Rational> c) { return ExactPoly(std::move(c)); }

inline ExactPoly theta2(const Rational& t2) { return coeffs({t2, 0, 0, 1}); }

inline ExactPoly theta3(const Rational& t2, const Rational& t3) {
  return coeffs({-5 * t2 * t2, t3, 0, 5 * t2, 0, 0, 1});
}

inline ExactPoly p1(const Rational& t1) { return coeffs({t1, 0, 0, 0, 0, 1}); }
inline ExactPoly q1() { return coeffs({0, 1}); }
inline ExactPoly q2(const Rational& t1, const Rational& tau2) { return coeffs({-4 * t1, tau2, 0, 0, 0, 1}); }

inline ExactPoly pm1() { return coeffs({0, 1}); }
inline ExactPoly qm1(const Rational& taum1) { return coeffs({taum1, 0, 1}); }

inline ExactPoly pm2(const Rational& taum1, const Rational& tm2) {
  const Rational& s = taum1;
  return coeffs({-7 * s * s * s * s, tm2, 28 * s * s * s, 0, 14 * s * s, 0, Rational(28, 5) * s, 0, 1});
}

inline ExactPoly qm2(const Rational& taum1, const Rational& taum2, const Rational& tm2) {
  const Rational& s = taum1;
  return coeffs({s * taum2 - Rational(5, 2) * tm2, -35 * s * s * s, taum2, 35 * s * s, 0, 7 * s, 0, 1});
}

// Field case, k = 1, variable zeta.
inline ExactPoly field_q1() { return coeffs({0, 1}); }
inline ExactPoly field_p1() { return coeffs({3, -3, 1}); }

inline ExactPoly field_q2(const Rational& t) { return coeffs({0, (t * t + 6) / 3, t, 1}); }

inline ExactPoly field_p2(const Rational& t) {
  const Rational t2 = t * t, t3 = t2 * t, t4 = t3 * t;
  return coeffs({
      -18 * t + 10 * t2 - 3 * t3 + t4 / 3 + 48,
      -48 + 66 * t - 28 * t2 + 5 * t3 - t4 / 3,
      112 - 90 * t + Rational(76, 3) * t2 - 3 * t3 + t4 / 9,
      -96 + 52 * t - 10 * t2 + Rational(2, 3) * t3,
      40 - 15 * t + Rational(5, 3) * t2,
      -9 + 2 * t,
      1,
  });
}

} // namespace charge_ladder::testing::tables

#endif
