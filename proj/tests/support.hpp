#ifndef CHARGE_LADDER_TESTS_SUPPORT_HPP
#define CHARGE_LADDER_TESTS_SUPPORT_HPP

#include <complex>
#include <random>
#include <vector>

#include "charge_ladder/charge_ladder.hpp"

namespace charge_ladder::testing {

inline ExactPoly P(std::initializer_list<long> ascending) {
  std::vector<Rational> c;
  for (long v : ascending) c.emplace_back(v);
  return ExactPoly(std::move(c));
}

inline ExactPoly Z() { return ExactPoly::z(); }

inline Rational Q(long num, long den = 1) { return make_rational(num, den); }

class Rng {
 public:
  explicit Rng(unsigned seed) : gen_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }

  // Nonzero numerator and small denominators, so exact sizes stay moderate.
  Rational rational(long max_num = 9, long max_den = 7) {
    long n = 0;
    while (n == 0) n = integer(-max_num, max_num);
    return make_rational(n, integer(1, max_den));
  }

  ExactPoly poly(long degree, bool monic = false) {
    std::vector<Rational> c;
    for (long d = 0; d < degree; ++d) c.push_back(integer(0, 2) == 0 ? Rational(0) : rational());
    c.push_back(monic ? Rational(1) : rational());
    return ExactPoly(std::move(c));
  }

  ExactPoly squarefree_poly(long degree, bool monic = true) {
    for (;;) {
      ExactPoly p = poly(degree, monic);
      if (is_squarefree(p)) return p;
    }
  }

  std::complex<double> point(double radius = 2.0) { return {real(-radius, radius), real(-radius, radius)}; }

  // Positions separated by at least min_gap.
  std::vector<std::complex<double>> points(std::size_t n, double radius = 2.0, double min_gap = 0.3) {
    std::vector<std::complex<double>> z;
    while (z.size() < n) {
      auto c = point(radius);
      bool ok = true;
      for (const auto& w : z) ok = ok && std::abs(c - w) >= min_gap;
      if (ok) z.push_back(c);
    }
    return z;
  }

  std::mt19937& engine() { return gen_; }

 private:
  std::mt19937 gen_;
};

// Independent check that F is an antiderivative of N / D:  F = A + C / D0
// (poly part A, rational numerator C, denominator D0) differentiates to N / D
// exactly iff (A' D0^2 + C' D0 - C D0') D == N D0^2.
inline bool differentiates_to(const ExactPoly& a, const ExactPoly& c, const ExactPoly& d0, const ExactPoly& n,
                              const ExactPoly& d) {
  const ExactPoly lhs = (derivative(a) * d0 * d0 + derivative(c) * d0 - c * derivative(d0)) * d;
  return lhs == n * d0 * d0;
}

} // namespace charge_ladder::testing

#endif
