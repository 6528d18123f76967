#ifndef CHARGE_LADDER_SPECTRAL_HPP
#define CHARGE_LADDER_SPECTRAL_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "generators.hpp"
#include "linalg.hpp"
#include "poly.hpp"
#include "reduction.hpp"

namespace charge_ladder {

/// Polynomial data of a Baker-Akhiezer function in a homogeneous field k.
struct FieldPair {
  ExactPoly p;
  ExactPoly q;
  Rational k{1};
  Rational lambda{2};
};

/// Lambda = 1 Baker-Akhiezer pair from the Wronskian of the psi-chain:
///   p = exp(-kz) W[psi_1, ..., psi_n, exp(kz)],  q = W[psi_1, ..., psi_n],
/// both divided by the leading coefficient of q so that q is monic.
inline FieldPair ba_lambda1(int n, const Rational& k, const std::vector<std::pair<Rational, Rational>>& psi_constants) {
  if (k == 0) throw FieldRequired("ba_lambda1 needs a nonzero field; use adler_moser for k = 0");
  if (n < 0) throw ParseError("Baker-Akhiezer index must be non-negative");
  const auto psi = psi_chain(n, psi_constants);
  const std::size_t dim = psi.size() + 1;

  // The j-th derivative of exp(kz) is k^j exp(kz); the common exp(kz) factor of
  // the last column is divided out.
  Matrix<ExactPoly> m(dim, std::vector<ExactPoly>(dim));
  for (std::size_t j = 0; j < psi.size(); ++j) {
    ExactPoly d = psi[j];
    for (std::size_t i = 0; i < dim; ++i) {
      m[i][j] = d;
      d = derivative(d);
    }
  }
  Rational kp(1);
  for (std::size_t i = 0; i < dim; ++i) {
    m[i][dim - 1] = ExactPoly::constant(kp);
    kp *= k;
  }
  ExactPoly p = bareiss_determinant(std::move(m), ExactPoly::constant(Rational(1)),
                                    [](const ExactPoly& a, const ExactPoly& b) { return exact_div(a, b); });
  ExactPoly q = wronskian(psi);
  const Rational scale = 1 / q.leading();
  return {p * scale, q * scale, k, Rational(1)};
}

/// Bracket with the field term; the zero polynomial certifies the pair.
inline ExactPoly bilinear_field_check(const FieldPair& pair) {
  return bracket(pair.p, pair.q, BracketParams(pair.lambda, pair.k));
}

struct FieldSolveReport {
  enum class Status { Solved, Incompatible };

  Status status = Status::Incompatible;
  std::optional<ExactPoly> p; // particular solution (free coefficients set to 0)
  std::size_t free_parameters = 0;
  std::size_t rank = 0;
  std::size_t unknowns = 0;
  long target_degree = 0;

  bool solved() const { return status == Status::Solved; }
};

/// Treats bracket(p, q, lambda, k) = 0 as a linear system in the coefficients
/// of a monic p of degree lambda * deg q and solves it exactly.
inline FieldSolveReport solve_p_given_q(const ExactPoly& q_in, const Rational& lambda = Rational(2),
                                        const Rational& k = Rational(1)) {
  if (k == 0) throw FieldRequired("solve_p_given_q needs a nonzero field");
  if (lambda == 0) throw UnsupportedLambda("lambda must be nonzero");
  if (q_in.is_zero()) throw InvariantViolation("q must be nonzero");
  if (!is_squarefree(q_in)) throw NotSquarefree("q is not squarefree");
  const ExactPoly q = make_monic(q_in);
  const BracketParams params(lambda, k);

  FieldSolveReport report;
  // Total charge must vanish: the top coefficient of the bracket is
  // 2k (deg p - lambda deg q).
  const Rational target = lambda * q.degree();
  if (!is_integer(target) || target < 0) return report;
  const long n = target.get_num().get_si();
  report.target_degree = n;
  report.unknowns = static_cast<std::size_t>(n);

  const ExactPoly rhs_poly = -bracket(ExactPoly::monomial(Rational(1), static_cast<std::size_t>(n)), q, params);
  std::vector<ExactPoly> columns;
  for (long j = 0; j < n; ++j)
    columns.push_back(bracket(ExactPoly::monomial(Rational(1), static_cast<std::size_t>(j)), q, params));

  std::size_t rows = static_cast<std::size_t>(std::max<long>(rhs_poly.degree() + 1, 0));
  for (const auto& c : columns) rows = std::max(rows, static_cast<std::size_t>(std::max<long>(c.degree() + 1, 0)));
  Matrix<Rational> a(rows, std::vector<Rational>(static_cast<std::size_t>(n)));
  std::vector<Rational> b(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    b[i] = rhs_poly.coeff(i);
    for (std::size_t j = 0; j < columns.size(); ++j) a[i][j] = columns[j].coeff(i);
  }
  auto sol = solve_linear(std::move(a), std::move(b));
  report.rank = sol.rank;
  report.free_parameters = sol.consistent ? sol.free_parameters : 0;
  if (!sol.consistent) return report;

  std::vector<Rational> coeffs = sol.particular;
  coeffs.emplace_back(1);
  report.p = ExactPoly(std::move(coeffs));
  report.status = FieldSolveReport::Status::Solved;
  return report;
}

/// Re-expresses the pair at field strength new_k via z -> (new_k / k) z. No
/// renormalization is applied, so the map is a group action on the pair.
inline FieldPair scale_substitute(const FieldPair& pair, const Rational& new_k) {
  if (pair.k == 0 || new_k == 0) throw FieldRequired("scale_substitute needs nonzero fields");
  const Rational ratio = new_k / pair.k;
  return {compose_linear(pair.p, ratio, Rational(0)), compose_linear(pair.q, ratio, Rational(0)), new_k, pair.lambda};
}

/// The q of the m = 3 field family, z^3 + t z^2 + ((t^2 + 6) / 3) z.
inline ExactPoly field_family_q2(const Rational& t) {
  return ExactPoly{Rational(0), Rational((t * t + 6) / 3), t, Rational(1)};
}

/// Coefficient table c[a][b] of a polynomial family sum_a sum_b c[a][b] z^a t^b
/// recovered by exact interpolation in t.
struct BivariateTable {
  std::vector<ExactPoly> by_z_degree; // by_z_degree[a] is the coefficient of z^a as a polynomial in t
};

/// Samples `family` at t = 0, 1, ..., max_t_degree + 1 and interpolates every z
/// coefficient. The extra sample confirms the degree bound.
inline BivariateTable tabulate_family(const std::function<ExactPoly(const Rational&)>& family, int max_t_degree) {
  std::vector<Rational> ts;
  std::vector<ExactPoly> samples;
  for (int s = 0; s <= max_t_degree + 1; ++s) {
    ts.emplace_back(s);
    samples.push_back(family(ts.back()));
  }
  long zdeg = -1;
  for (const auto& s : samples) zdeg = std::max(zdeg, s.degree());
  BivariateTable table;
  for (long a = 0; a <= zdeg; ++a) {
    std::vector<Rational> ys;
    for (const auto& s : samples) ys.push_back(s.coeff(static_cast<std::size_t>(a)));
    ExactPoly c = interpolate(ts, ys);
    if (c.degree() > max_t_degree) throw InvariantViolation("tabulate_family: t-degree exceeds the stated bound");
    table.by_z_degree.push_back(std::move(c));
  }
  return table;
}

/// Weights w (z has weight 1, t has weight w) in [w_min, w_max] under which the
/// tabulated family is weighted-homogeneous.
inline std::vector<int> homogeneous_weights(const BivariateTable& table, int w_min, int w_max) {
  std::vector<int> out;
  for (int w = w_min; w <= w_max; ++w) {
    std::optional<long> total;
    bool ok = true;
    for (std::size_t a = 0; a < table.by_z_degree.size() && ok; ++a) {
      const auto& c = table.by_z_degree[a];
      for (std::size_t b = 0; b < c.coeffs().size() && ok; ++b) {
        if (c.coeffs()[b] == 0) continue;
        const long weight = static_cast<long>(a) + static_cast<long>(w) * static_cast<long>(b);
        if (!total) total = weight;
        ok = *total == weight;
      }
    }
    if (ok) out.push_back(w);
  }
  return out;
}

} // namespace charge_ladder

#endif
