#ifndef CHARGE_LADDER_GENERATORS_HPP
#define CHARGE_LADDER_GENERATORS_HPP

#include <cstdlib>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"
#include "rational.hpp"
#include "reduction.hpp"

namespace charge_ladder {

/// Parameters of the bilinear form: negative-charge magnitude lambda and
/// homogeneous field strength k.
struct BracketParams {
  Rational lambda{1};
  Rational field{0};

  BracketParams() = default;
  BracketParams(Rational lambda_, Rational field_ = Rational(0))
      : lambda(std::move(lambda_)), field(std::move(field_)) {
    if (lambda == 0) throw UnsupportedLambda("lambda must be nonzero");
  }
};

/// p''q - 2L p'q' + L^2 p q'' + 2k (p'q - L q'p).
inline ExactPoly bracket(const ExactPoly& p, const ExactPoly& q, const BracketParams& params) {
  const Rational& lam = params.lambda;
  const ExactPoly dp = derivative(p), dq = derivative(q);
  ExactPoly out = derivative(dp) * q - Rational(2 * lam) * (dp * dq) + Rational(lam * lam) * (p * derivative(dq));
  if (params.field != 0) out += Rational(2 * params.field) * (dp * q - lam * (dq * p));
  return out;
}

/// Integration constants for generated families.
///
/// `t` holds the Adler-Moser t_n and the lambda = 2 t_i; `tau` holds the
/// lambda = 2 tau_i. Unspecified constants are zero.
struct LadderState {
  int index = 0;
  std::map<int, Rational> t;
  std::map<int, Rational> tau;

  Rational t_at(int i) const {
    auto it = t.find(i);
    return it == t.end() ? Rational(0) : it->second;
  }
  Rational tau_at(int i) const {
    auto it = tau.find(i);
    return it == tau.end() ? Rational(0) : it->second;
  }
  int branch() const { return (index > 0) - (index < 0); }
};

/// Degree of the n-th Adler-Moser polynomial, n(n+1)/2.
inline long adler_moser_degree(long n) { return n * (n + 1) / 2; }

/// theta_0 .. theta_n from the first-order relation
///   theta_{m+1} = theta_{m-1} [ (2m+1) integral theta_m^2 / theta_{m-1}^2 + t_{m+1} ].
/// t_1 is fixed to zero (translation freedom); constants.t supplies t_2..t_n.
inline std::vector<ExactPoly> adler_moser_sequence(int n, const LadderState& constants) {
  if (n < 0) throw ParseError("Adler-Moser index must be non-negative");
  std::vector<ExactPoly> theta{ExactPoly::constant(Rational(1)), ExactPoly::z()};
  for (int m = 1; m < n; ++m) {
    const ExactPoly& prev = theta[static_cast<std::size_t>(m - 1)];
    const ExactPoly& cur = theta[static_cast<std::size_t>(m)];
    ExactPoly next = log_free_product(cur * cur, prev, Rational(2 * m + 1)) + constants.t_at(m + 1) * prev;
    theta.push_back(std::move(next));
  }
  theta.resize(static_cast<std::size_t>(n) + 1);
  return theta;
}

inline ExactPoly adler_moser(int n, const LadderState& constants) {
  return adler_moser_sequence(n, constants).back();
}

/// psi_1 = z, psi_m = double antiderivative of psi_{m-1} + a_m z + b_m, where
/// psi_constants[m - 2] = (a_m, b_m). Missing pairs are zero.
inline std::vector<ExactPoly> psi_chain(int n, const std::vector<std::pair<Rational, Rational>>& psi_constants) {
  std::vector<ExactPoly> psi;
  if (n <= 0) return psi;
  psi.push_back(ExactPoly::z());
  for (int m = 2; m <= n; ++m) {
    ExactPoly next = antiderivative(antiderivative(psi.back()));
    const std::size_t slot = static_cast<std::size_t>(m - 2);
    if (slot < psi_constants.size()) next += ExactPoly{psi_constants[slot].second, psi_constants[slot].first};
    psi.push_back(std::move(next));
  }
  return psi;
}

/// Monic W[psi_1, ..., psi_n].
inline ExactPoly adler_moser_wronskian(int n, const std::vector<std::pair<Rational, Rational>>& psi_constants) {
  if (n < 0) throw ParseError("Adler-Moser index must be non-negative");
  return make_monic(wronskian(psi_chain(n, psi_constants)));
}

/// Memoized generator for the lambda = 2 ladder p_i, q_i, i in Z.
///
/// Upward (i >= 0), from p_0 = q_0 = 1:
///   q_{i+1} = q_i [ (3i+1) integral p_i / q_i^2 + tau_{i+1} ]
///   p_i     = p_{i-1} [ (6i-1) integral q_i^4 / p_{i-1}^2 + t_i ]
/// Downward (i <= 0):
///   p_{i-1} = p_i [ -(6i-1) integral q_i^4 / p_i^2 + t_{i-1} ]
///   q_i     = q_{i+1} [ -(3i+1) integral p_i / q_{i+1}^2 + tau_i ]
class Lambda2Ladder {
public:
  explicit Lambda2Ladder(LadderState constants) : constants_(std::move(constants)) {
    p_.emplace(0, ExactPoly::constant(Rational(1)));
    q_.emplace(0, ExactPoly::constant(Rational(1)));
  }

  const ExactPoly& p(int i) {
    if (i >= 0)
      ensure_up_p(i);
    else
      ensure_down(i);
    return p_.at(i);
  }
  const ExactPoly& q(int i) {
    if (i > 0)
      ensure_up_q(i);
    else
      ensure_down(i);
    return q_.at(i);
  }

private:
  void ensure_up_q(int i) {
    if (q_.count(i)) return;
    ensure_up_p(i - 1);
    const ExactPoly& prev = q_.at(i - 1);
    q_.emplace(i, log_free_product(p_.at(i - 1), prev, Rational(3 * (i - 1) + 1)) + constants_.tau_at(i) * prev);
  }

  void ensure_up_p(int i) {
    if (p_.count(i)) return;
    ensure_up_q(i);
    ensure_up_p(i - 1);
    const ExactPoly& prev = p_.at(i - 1);
    p_.emplace(i, log_free_product(pow(q_.at(i), 4), prev, Rational(6 * i - 1)) + constants_.t_at(i) * prev);
  }

  void ensure_down(int i) {
    for (int j = 0; j > i; --j) {
      if (!p_.count(j - 1)) {
        const ExactPoly& pj = p_.at(j);
        p_.emplace(j - 1, log_free_product(pow(q_.at(j), 4), pj, Rational(-(6 * j - 1))) + constants_.t_at(j - 1) * pj);
      }
      if (!q_.count(j - 1)) {
        const ExactPoly& next = q_.at(j);
        q_.emplace(j - 1, log_free_product(p_.at(j - 1), next, Rational(-(3 * (j - 1) + 1))) +
                              constants_.tau_at(j - 1) * next);
      }
    }
  }

  LadderState constants_;
  std::map<int, ExactPoly> p_;
  std::map<int, ExactPoly> q_;
};

inline std::pair<ExactPoly, ExactPoly> lambda2_ladder(int i, const LadderState& constants) {
  Lambda2Ladder ladder(constants);
  ExactPoly p = ladder.p(i);
  return {std::move(p), ladder.q(i)};
}

inline long lambda2_p_degree(long i) { return i * (3 * i + 2); }
inline long lambda2_q_degree(long i) { return i * (3 * i - 1) / 2; }

/// Leading-coefficient constraint for {p, q}_2 = 0 with deg p = n, deg q = m:
/// (n - 2m)^2 - n - 4m = 0.
inline bool admissible_degrees(long n, long m) {
  const long long d = static_cast<long long>(n) - 2LL * m;
  return d * d - n - 4LL * m == 0;
}

struct Antiderivative {
  std::string integrand;    // e.g. "q^4/p^2"
  ExactPoly poly_part;      // polynomial part of the antiderivative
  ExactPoly rational_numerator;
  ExactPoly denominator;    // the antiderivative is poly_part + rational_numerator / denominator
};

struct Obstruction {
  std::string integrand;
  ExactPoly log_numerator;  // nonzero: the integral has log terms B / denominator
  ExactPoly denominator;
};

struct RationalityCertificate {
  Rational lambda;
  bool bracket_zero = false;
  std::vector<Antiderivative> antiderivatives;
  std::vector<Obstruction> obstructions;

  bool rational() const { return obstructions.empty(); }
};

inline bool is_supported_certificate_lambda(const Rational& lambda) {
  return lambda == Rational(1, 2) || lambda == 1 || lambda == 2;
}

/// Explicit antiderivatives of q^(2L) / p^2 and p^(2/L) / q^2 (L in {1/2, 1, 2}),
/// or the nonzero log numerators that obstruct them.
inline RationalityCertificate certify_rational_integrals(const ExactPoly& p, const ExactPoly& q, const Rational& lambda) {
  if (!is_supported_certificate_lambda(lambda))
    throw UnsupportedLambda("rationality certificates need lambda in {1/2, 1, 2}, got " + to_pretty_string(lambda));
  if (!is_squarefree(p)) throw NotSquarefree("p is not squarefree");
  if (!is_squarefree(q)) throw NotSquarefree("q is not squarefree");
  if (!are_coprime(p, q)) throw NotCoprime("p and q share a root");

  RationalityCertificate cert;
  cert.lambda = lambda;
  cert.bracket_zero = bracket(p, q, BracketParams(lambda)).is_zero();

  const Rational e1 = 2 * lambda, e2 = 2 / lambda;
  auto one = [&](const ExactPoly& num_base, const Rational& exponent, const ExactPoly& den_base,
                 const std::string& label) {
    auto red = hermite_reduce(pow(num_base, static_cast<unsigned>(exponent.get_num().get_ui())), den_base);
    if (red.log_free())
      cert.antiderivatives.push_back({label, red.poly_antideriv, red.rational_part_numerator, den_base});
    else
      cert.obstructions.push_back({label, red.log_numerator, den_base});
  };
  one(q, e1, p, "q^" + to_pretty_string(e1) + "/p^2");
  one(p, e2, q, "p^" + to_pretty_string(e2) + "/q^2");
  return cert;
}

} // namespace charge_ladder

#endif
