#ifndef CHARGE_LADDER_REDUCTION_HPP
#define CHARGE_LADDER_REDUCTION_HPP

#include <cstddef>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "poly.hpp"

namespace charge_ladder {

/// W[f_0, ..., f_{n-1}]: determinant of the matrix whose (i, j) entry is the
/// i-th derivative of fs[j].
inline ExactPoly wronskian(const std::vector<ExactPoly>& fs) {
  if (fs.empty()) return ExactPoly::constant(Rational(1));
  const std::size_t n = fs.size();
  Matrix<ExactPoly> m(n, std::vector<ExactPoly>(n));
  for (std::size_t j = 0; j < n; ++j) {
    ExactPoly d = fs[j];
    for (std::size_t i = 0; i < n; ++i) {
      m[i][j] = d;
      d = derivative(d);
    }
  }
  return bareiss_determinant(std::move(m), ExactPoly::constant(Rational(1)),
                             [](const ExactPoly& a, const ExactPoly& b) { return exact_div(a, b); });
}

/// Result of splitting  N / p^2  as  S + (C/p)' + B/p  with p squarefree.
struct ReductionResult {
  ExactPoly poly_antideriv;          // antiderivative of S, zero constant term
  ExactPoly rational_part_numerator; // C, deg C < deg p
  ExactPoly log_numerator;           // B, deg B < deg p; zero iff the integral is log-free

  bool log_free() const { return log_numerator.is_zero(); }
};

/// Log-free reduction of  integral N / p^2  for squarefree p.
///
/// The rational part of the antiderivative is poly_antideriv + C / p; the
/// remaining integrand B / p integrates to logarithms unless B = 0.
inline ReductionResult hermite_reduce(const ExactPoly& numerator, const ExactPoly& p) {
  if (p.is_zero()) throw DivisionByZero("hermite_reduce: zero denominator");
  const ExactPoly dp = derivative(p);
  if (!is_squarefree(p)) throw NotSquarefree("hermite_reduce: denominator base is not squarefree");

  auto [s, r] = divrem(numerator, p * p);
  // R = C'p - Cp' + Bp, so C = -R / p' (mod p).
  ExactPoly c = divrem(-(r * inverse_mod(dp, p)), p).rem;
  ExactPoly b = exact_div(r - derivative(c) * p + c * dp, p);
  return {antiderivative(s), std::move(c), std::move(b)};
}

/// Horowitz-Ostrogradsky split of  integral N / D  for arbitrary nonzero D:
///   N / D = S + (C / D1)' + B / D2,  D1 = gcd(D, D'),  D2 = D / D1.
struct GeneralReduction {
  ExactPoly poly_antideriv;
  ExactPoly rational_numerator;   // C, deg C < deg D1
  ExactPoly rational_denominator; // D1 (monic)
  ExactPoly log_numerator;        // B, deg B < deg D2
  ExactPoly log_denominator;      // D2

  bool log_free() const { return log_numerator.is_zero(); }
};

inline GeneralReduction ostrogradsky_reduce(const ExactPoly& numerator, const ExactPoly& denominator) {
  if (denominator.is_zero()) throw DivisionByZero("ostrogradsky_reduce: zero denominator");
  auto [s, r] = divrem(numerator, denominator);
  const ExactPoly dd = derivative(denominator);
  ExactPoly d1 = dd.is_zero() ? ExactPoly::constant(Rational(1)) : gcd(denominator, dd);
  ExactPoly d2 = exact_div(denominator, d1);
  // R = C' D2 - C H + B D1 with H = D1' D2 / D1 (a polynomial).
  const ExactPoly h = exact_div(derivative(d1) * d2, d1);

  const std::size_t n1 = static_cast<std::size_t>(d1.degree());
  const std::size_t n2 = static_cast<std::size_t>(d2.degree());
  const std::size_t rows = n1 + n2;
  Matrix<Rational> a(rows, std::vector<Rational>(rows));
  auto put_column = [&](std::size_t col, const ExactPoly& image) {
    for (std::size_t i = 0; i < image.coeffs().size(); ++i) {
      if (i >= rows) throw InvariantViolation("ostrogradsky_reduce: column degree overflow");
      a[i][col] = image.coeffs()[i];
    }
  };
  for (std::size_t j = 0; j < n1; ++j) {
    const ExactPoly basis = ExactPoly::monomial(Rational(1), j);
    put_column(j, derivative(basis) * d2 - basis * h);
  }
  for (std::size_t j = 0; j < n2; ++j) put_column(n1 + j, ExactPoly::monomial(Rational(1), j) * d1);

  std::vector<Rational> rhs(rows);
  for (std::size_t i = 0; i < rows; ++i) rhs[i] = r.coeff(i);
  auto sol = solve_linear(std::move(a), std::move(rhs));
  if (!sol.consistent || sol.free_parameters != 0)
    throw InvariantViolation("ostrogradsky_reduce: singular Ostrogradsky system");

  std::vector<Rational> c(sol.particular.begin(), sol.particular.begin() + static_cast<long>(n1));
  std::vector<Rational> b(sol.particular.begin() + static_cast<long>(n1), sol.particular.end());
  return {antiderivative(s), ExactPoly(std::move(c)), std::move(d1), ExactPoly(std::move(b)), std::move(d2)};
}

/// p * prefactor * integral(N / p^2) as an exact polynomial, with the
/// integration constant chosen so the polynomial part has no constant term.
/// Uses hermite_reduce when p is squarefree and the general split otherwise.
/// Throws InvariantViolation when a logarithm appears or the product is not a
/// polynomial.
inline ExactPoly log_free_product(const ExactPoly& numerator, const ExactPoly& p, const Rational& prefactor) {
  if (is_squarefree(p)) {
    auto red = hermite_reduce(numerator, p);
    if (!red.log_free()) throw InvariantViolation("logarithmic term in a ladder antiderivative");
    return (p * red.poly_antideriv + red.rational_part_numerator) * prefactor;
  }
  auto red = ostrogradsky_reduce(numerator, p * p);
  if (!red.log_free()) throw InvariantViolation("logarithmic term in a ladder antiderivative");
  return (p * red.poly_antideriv + exact_div(p * red.rational_numerator, red.rational_denominator)) * prefactor;
}

/// True iff p divides p''q - 2*lambda*p'q', i.e. every residue of
/// q^(2 lambda) / p^2 at the roots of p vanishes.
inline bool residue_divisibility(const ExactPoly& p, const ExactPoly& q, const Rational& lambda) {
  if (!is_squarefree(p)) throw NotSquarefree("residue_divisibility: p is not squarefree");
  if (!are_coprime(p, q)) throw NotCoprime("residue_divisibility: p and q share a root");
  const ExactPoly dp = derivative(p);
  const ExactPoly expr = derivative(dp) * q - Rational(2 * lambda) * dp * derivative(q);
  return divrem(expr, p).rem.is_zero();
}

} // namespace charge_ladder

#endif
