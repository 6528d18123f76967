#ifndef CHARGE_LADDER_NUMERICS_HPP
#define CHARGE_LADDER_NUMERICS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"
#include "rational.hpp"

namespace charge_ladder {

using Complex = std::complex<double>;

inline constexpr double kDefaultRootTol = 1e-10;
inline constexpr double kDefaultForceTol = 1e-8;
inline constexpr double kDefaultCollisionTol = 1e-10;

/// Point charges in the plane: charge 1 for roots of p, -lambda for roots of q.
struct ChargeSystem {
  std::vector<Complex> positions;
  std::vector<double> charges;
  Complex field{0.0, 0.0};

  std::size_t size() const { return positions.size(); }
  void validate() const {
    if (positions.size() != charges.size())
      throw InvariantViolation("ChargeSystem: positions and charges differ in length");
  }
};

inline double configuration_diameter(const std::vector<Complex>& z) {
  double d = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j) d = std::max(d, std::abs(z[i] - z[j]));
  return d;
}

struct ClosestPair {
  std::size_t i = 0, j = 0;
  double distance = std::numeric_limits<double>::infinity();
};

inline ClosestPair closest_pair(const std::vector<Complex>& z) {
  ClosestPair best;
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      const double d = std::abs(z[i] - z[j]);
      if (d < best.distance) best = {i, j, d};
    }
  return best;
}

// Throws CollisionError when two positions are closer than
// collision_tol * diameter (or coincide exactly).
inline void check_collisions(const std::vector<Complex>& z, double collision_tol, double reference_diameter = -1.0) {
  if (z.size() < 2) return;
  const double diam = reference_diameter > 0 ? reference_diameter : configuration_diameter(z);
  const auto cp = closest_pair(z);
  if (cp.distance == 0.0 || cp.distance < collision_tol * diam)
    throw CollisionError("charges " + std::to_string(cp.i) + " and " + std::to_string(cp.j) + " coincide");
}

struct RootResult {
  std::vector<Complex> roots;      // with multiplicity, deg p entries
  std::vector<double> residuals;   // |p(r)| at each returned root
  bool multiple_root_warning = false;
  int iterations = 0;
};

namespace detail {

using LComplex = std::complex<long double>;

inline std::pair<LComplex, LComplex> horner_with_derivative(const std::vector<long double>& c, LComplex x) {
  LComplex v = 0, dv = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dv = dv * x + v;
    v = v * x + *it;
  }
  return {v, dv};
}

// Aberth-Ehrlich simultaneous iteration for a squarefree polynomial given by
// ascending long double coefficients. Returns the iteration count.
inline int aberth(const std::vector<long double>& c, std::vector<LComplex>& z, int max_iter) {
  const std::size_t n = c.size() - 1;
  // Fujiwara bound on root moduli.
  long double bound = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    long double ratio = std::fabs(c[n - k] / c[n]);
    if (k == n) ratio /= 2;
    bound = std::max(bound, std::pow(ratio, 1.0L / static_cast<long double>(k)));
  }
  bound *= 2;
  if (bound == 0) bound = 1;
  z.resize(n);
  const long double radius = bound / 2;
  for (std::size_t k = 0; k < n; ++k) {
    const long double angle = 2 * std::numbers::pi_v<long double> * static_cast<long double>(k) / n + 0.4L;
    z[k] = std::polar(radius, angle);
  }

  constexpr long double eps = std::numeric_limits<long double>::epsilon();
  std::vector<bool> done(n, false);
  for (int iter = 1; iter <= max_iter; ++iter) {
    bool all_done = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      auto [v, dv] = horner_with_derivative(c, z[k]);
      // Stop once |p(z)| is within the rounding error of Horner's scheme.
      const long double az = std::abs(z[k]);
      long double scale = 0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) scale = scale * az + std::fabs(*it);
      if (std::abs(v) <= 4 * static_cast<long double>(n + 1) * eps * scale) {
        done[k] = true;
        continue;
      }
      const LComplex ratio = v / dv;
      LComplex sum = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) sum += 1.0L / (z[k] - z[j]);
      const LComplex w = ratio / (1.0L - ratio * sum);
      z[k] -= w;
      if (std::abs(w) <= 8 * eps * std::max(std::abs(z[k]), eps * bound))
        done[k] = true;
      else
        all_done = false;
    }
    if (all_done) return iter;
  }
  throw ConvergenceFailure("Aberth iteration did not converge within " + std::to_string(max_iter) + " sweeps");
}

// Yun squarefree factorization: p = lc * prod f_i^i with f_i squarefree, monic.
inline std::vector<std::pair<ExactPoly, unsigned>> squarefree_factors(const ExactPoly& p) {
  std::vector<std::pair<ExactPoly, unsigned>> out;
  const ExactPoly f = make_monic(p);
  const ExactPoly df = derivative(f);
  ExactPoly a = gcd(f, df);
  ExactPoly b = exact_div(f, a);
  ExactPoly c = exact_div(df, a);
  ExactPoly d = c - derivative(b);
  unsigned i = 1;
  while (b.degree() > 0) {
    ExactPoly g = gcd(b, d);
    ExactPoly nb = exact_div(b, g);
    if (g.degree() > 0) out.emplace_back(g, i);
    c = exact_div(d, g);
    b = std::move(nb);
    d = c - derivative(b);
    ++i;
  }
  return out;
}

} // namespace detail

/// All complex roots of p (deg p >= 1), with multiplicity.
///
/// Roots of each squarefree factor are found by Aberth-Ehrlich iteration in
/// extended precision. A non-squarefree input sets multiple_root_warning.
/// Every root satisfies |p(r)| <= tol * max|coeff| * max(1, |r|)^deg p or
/// ConvergenceFailure is thrown.
inline RootResult roots(const ExactPoly& p, double tol = kDefaultRootTol, int max_iter = 2000) {
  if (p.degree() < 1) throw InvariantViolation("roots: polynomial degree must be at least 1");
  RootResult result;
  auto factors = detail::squarefree_factors(p);
  result.multiple_root_warning = factors.size() != 1 || factors.front().second != 1;
  for (const auto& [f, mult] : factors) {
    std::vector<long double> c;
    for (const auto& a : f.coeffs()) c.push_back(to_long_double(a));
    std::vector<detail::LComplex> z;
    if (f.degree() == 1) {
      z.push_back(-c[0] / c[1]);
    } else {
      result.iterations = std::max(result.iterations, detail::aberth(c, z, max_iter));
    }
    for (const auto& r : z)
      for (unsigned m = 0; m < mult; ++m) result.roots.emplace_back(static_cast<double>(r.real()), static_cast<double>(r.imag()));
  }

  std::sort(result.roots.begin(), result.roots.end(), [](Complex x, Complex y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });

  std::vector<long double> full;
  long double cmax = 0;
  for (const auto& a : p.coeffs()) {
    full.push_back(to_long_double(a));
    cmax = std::max(cmax, std::fabs(full.back()));
  }
  for (const auto& r : result.roots) {
    const auto v = detail::horner_with_derivative(full, detail::LComplex(r.real(), r.imag())).first;
    const double res = static_cast<double>(std::abs(v));
    result.residuals.push_back(res);
    const long double scale = cmax * std::pow(std::max(1.0L, static_cast<long double>(std::abs(r))), p.degree());
    if (!result.multiple_root_warning && res > tol * scale)
      throw ConvergenceFailure("root residual " + std::to_string(res) + " exceeds tolerance");
  }
  return result;
}

/// F_i = Q_i (k + sum_{j != i} Q_j / (z_i - z_j)). All F_i vanish exactly at
/// critical points of the charge energy.
inline std::vector<Complex> force(const ChargeSystem& system, double collision_tol = kDefaultCollisionTol) {
  system.validate();
  check_collisions(system.positions, collision_tol);
  const auto& z = system.positions;
  std::vector<Complex> f(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    Complex s = system.field;
    for (std::size_t j = 0; j < z.size(); ++j)
      if (j != i) s += system.charges[j] / (z[i] - z[j]);
    f[i] = system.charges[i] * s;
  }
  return f;
}

struct EquilibriumReport {
  double max_force_norm = 0.0;
  std::vector<Complex> per_charge_forces;
  std::vector<double> root_residuals;
  ChargeSystem system;
  std::size_t positive_count = 0; // the first positive_count charges are roots of p
  double force_tol = kDefaultForceTol;
  double root_tol = kDefaultRootTol;
  double collision_tol = kDefaultCollisionTol;
  bool multiple_root_warning = false;

  bool equilibrium() const { return max_force_norm < force_tol; }
};

inline ChargeSystem charge_system_from_pair(const RootResult& p_roots, const RootResult& q_roots, double lambda,
                                            Complex field) {
  ChargeSystem sys;
  sys.field = field;
  for (const auto& r : p_roots.roots) {
    sys.positions.push_back(r);
    sys.charges.push_back(1.0);
  }
  for (const auto& r : q_roots.roots) {
    sys.positions.push_back(r);
    sys.charges.push_back(-lambda);
  }
  return sys;
}

/// Roots of p carry charge +1, roots of q carry -lambda; reports the largest
/// complex force in field k.
inline EquilibriumReport verify_equilibrium(const ExactPoly& p, const ExactPoly& q, const Rational& lambda,
                                            const Rational& k, double force_tol = kDefaultForceTol,
                                            double root_tol = kDefaultRootTol,
                                            double collision_tol = kDefaultCollisionTol) {
  EquilibriumReport report;
  report.force_tol = force_tol;
  report.root_tol = root_tol;
  report.collision_tol = collision_tol;
  RootResult pr, qr;
  if (p.degree() >= 1) pr = roots(p, root_tol);
  if (q.degree() >= 1) qr = roots(q, root_tol);
  report.multiple_root_warning = pr.multiple_root_warning || qr.multiple_root_warning;
  report.root_residuals = pr.residuals;
  report.root_residuals.insert(report.root_residuals.end(), qr.residuals.begin(), qr.residuals.end());
  report.system = charge_system_from_pair(pr, qr, to_double(lambda), Complex(to_double(k), 0.0));
  report.positive_count = pr.roots.size();
  report.per_charge_forces = force(report.system, collision_tol);
  for (const auto& f : report.per_charge_forces) report.max_force_norm = std::max(report.max_force_norm, std::abs(f));
  return report;
}

} // namespace charge_ladder

#endif
