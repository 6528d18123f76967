#ifndef CHARGE_LADDER_DYNAMICS_HPP
#define CHARGE_LADDER_DYNAMICS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "generators.hpp"
#include "numerics.hpp"
#include "poly.hpp"

namespace charge_ladder {

/// dz_i/dt = sum_{j != i} Q_j / (z_i - z_j). The field of the system is not
/// part of the flow.
inline std::vector<Complex> vortex_rhs(const ChargeSystem& system, double collision_tol = kDefaultCollisionTol) {
  system.validate();
  check_collisions(system.positions, collision_tol);
  const auto& z = system.positions;
  std::vector<Complex> v(z.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = 0; j < z.size(); ++j)
      if (j != i) v[i] += system.charges[j] / (z[i] - z[j]);
  return v;
}

/// Second time derivative along the flow by the chain rule:
/// -sum_j Q_j (v_i - v_j) / (z_i - z_j)^2.
inline std::vector<Complex> acceleration_chain_rule(const ChargeSystem& system) {
  const auto v = vortex_rhs(system);
  const auto& z = system.positions;
  std::vector<Complex> a(z.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = 0; j < z.size(); ++j)
      if (j != i) {
        const Complex d = z[i] - z[j];
        a[i] -= system.charges[j] * (v[i] - v[j]) / (d * d);
      }
  return a;
}

/// Closed-form pairwise law -sum_j Q_j (Q_i + Q_j) / (z_i - z_j)^3. With
/// include_mixed = false, pairs of opposite sign are skipped.
inline std::vector<Complex> acceleration_pairwise(const ChargeSystem& system, bool include_mixed = true) {
  system.validate();
  check_collisions(system.positions, kDefaultCollisionTol);
  const auto& z = system.positions;
  const auto& q = system.charges;
  std::vector<Complex> a(z.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = 0; j < z.size(); ++j) {
      if (j == i) continue;
      if (!include_mixed && q[i] * q[j] < 0) continue;
      const Complex d = z[i] - z[j];
      a[i] -= q[j] * (q[i] + q[j]) / (d * d * d);
    }
  return a;
}

/// max_i |chain-rule acceleration - pairwise acceleration|; vanishes at every
/// configuration.
inline double acceleration_residual(const ChargeSystem& system) {
  const auto a = acceleration_chain_rule(system);
  const auto b = acceleration_pairwise(system);
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(a[i] - b[i]));
  return r;
}

namespace detail {
inline Complex weighted_energy(const std::vector<Complex>& z, const std::vector<Complex>& v,
                               const std::vector<double>& q) {
  Complex h = 0;
  for (std::size_t i = 0; i < z.size(); ++i) h += q[i] * v[i] * v[i];
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      const Complex d = z[i] - z[j];
      h -= q[i] * q[j] * (q[i] + q[j]) / (d * d);
    }
  return h;
}
} // namespace detail

/// Charge-weighted energy sum_i Q_i v_i^2 - sum_{i<j} Q_i Q_j (Q_i + Q_j) / (z_i - z_j)^2
/// with v the vortex velocities.
inline Complex conserved_quantity(const ChargeSystem& system) {
  return detail::weighted_energy(system.positions, vortex_rhs(system), system.charges);
}

struct IntegratorOptions {
  double rel_tol = 1e-12;
  double abs_tol = 1e-12;
  double initial_step = 0.0; // 0 selects a step from the initial velocities
  std::size_t max_steps = 1'000'000;
  double collision_tol = kDefaultCollisionTol;
  // On step-size underflow, a closest pair below this fraction of the initial
  // diameter is reported as a collision rather than an underflow.
  double near_collision_ratio = 1e-6;
  bool record = true;
};

struct TrajectorySample {
  double t = 0.0;
  std::vector<Complex> positions;
  std::vector<Complex> velocities;
  Complex invariant{0.0, 0.0};
};

struct Trajectory {
  enum class Termination { Completed, CollisionDetected, StepSizeUnderflow, StepLimit };

  std::vector<double> charges;
  std::vector<TrajectorySample> samples; // first sample is the initial state
  TrajectorySample final_state;
  Termination termination = Termination::Completed;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  double max_error_estimate = 0.0;
  // Set when termination == CollisionDetected.
  std::optional<ClosestPair> collision_pair;
  double collision_time = 0.0;

  bool completed() const { return termination == Termination::Completed; }
  ChargeSystem final_system() const { return {final_state.positions, charges, {}}; }
};

inline const char* to_string(Trajectory::Termination t) {
  switch (t) {
    case Trajectory::Termination::Completed: return "completed";
    case Trajectory::Termination::CollisionDetected: return "collision";
    case Trajectory::Termination::StepSizeUnderflow: return "step_size_underflow";
    case Trajectory::Termination::StepLimit: return "step_limit";
  }
  return "unknown";
}

namespace detail {

// Dormand-Prince 5(4) tableau.
struct DormandPrince {
  static constexpr std::array<double, 7> c{0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;
};

inline std::vector<Complex> raw_rhs(const std::vector<Complex>& z, const std::vector<double>& q) {
  std::vector<Complex> v(z.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = 0; j < z.size(); ++j)
      if (j != i) v[i] += q[j] / (z[i] - z[j]);
  return v;
}

} // namespace detail

/// Adaptive Dormand-Prince 5(4) integration of the vortex flow on [0, t_end]
/// with PI step-size control and per-component mixed error tolerances.
///
/// Collisions and step failures end the run early; the returned trajectory
/// records which outcome occurred together with every accepted step.
inline Trajectory integrate(const ChargeSystem& system, double t_end, const IntegratorOptions& opts = {}) {
  system.validate();
  if (!(t_end > 0)) throw InvariantViolation("integrate: t_end must be positive");
  check_collisions(system.positions, opts.collision_tol);

  using DP = detail::DormandPrince;
  const auto& q = system.charges;
  const std::size_t n = system.size();
  const double diam0 = std::max(configuration_diameter(system.positions), std::numeric_limits<double>::min());

  Trajectory traj;
  traj.charges = q;
  std::vector<Complex> y = system.positions;
  std::vector<Complex> k1 = detail::raw_rhs(y, q);
  double t = 0.0;

  auto snapshot = [&](double time, const std::vector<Complex>& pos, const std::vector<Complex>& vel) {
    TrajectorySample s{time, pos, vel, detail::weighted_energy(pos, vel, q)};
    if (opts.record) traj.samples.push_back(s);
    traj.final_state = std::move(s);
  };
  snapshot(t, y, k1);

  auto error_scale = [&](const std::vector<Complex>& err, const std::vector<Complex>& y0,
                         const std::vector<Complex>& y1) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sc = opts.abs_tol + opts.rel_tol * std::max(std::abs(y0[i]), std::abs(y1[i]));
      const double r = std::abs(err[i]) / sc;
      acc += r * r;
    }
    return n == 0 ? 0.0 : std::sqrt(acc / static_cast<double>(n));
  };

  double h = opts.initial_step;
  if (h <= 0) {
    double vmax = 0.0;
    for (const auto& v : k1) vmax = std::max(vmax, std::abs(v));
    h = vmax > 0 ? 0.01 * diam0 / vmax : t_end;
  }
  h = std::min(h, t_end);

  constexpr double beta = 0.04, alpha = 0.2 - 0.75 * beta, safety = 0.9;
  double err_prev = 1e-4;
  bool last_rejected = false;
  std::vector<Complex> tmp(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), y_new(n), err(n);

  while (t < t_end) {
    if (traj.accepted_steps + traj.rejected_steps >= opts.max_steps) {
      traj.termination = Trajectory::Termination::StepLimit;
      return traj;
    }
    if (h < 16 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) {
      const auto cp = closest_pair(y);
      if (cp.distance < opts.near_collision_ratio * diam0) {
        traj.termination = Trajectory::Termination::CollisionDetected;
        traj.collision_pair = cp;
        traj.collision_time = t;
      } else {
        traj.termination = Trajectory::Termination::StepSizeUnderflow;
      }
      return traj;
    }
    if (t + h > t_end) h = t_end - t;

    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * DP::a21 * k1[i];
    k2 = detail::raw_rhs(tmp, q);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (DP::a31 * k1[i] + DP::a32 * k2[i]);
    k3 = detail::raw_rhs(tmp, q);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * (DP::a41 * k1[i] + DP::a42 * k2[i] + DP::a43 * k3[i]);
    k4 = detail::raw_rhs(tmp, q);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (DP::a51 * k1[i] + DP::a52 * k2[i] + DP::a53 * k3[i] + DP::a54 * k4[i]);
    k5 = detail::raw_rhs(tmp, q);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (DP::a61 * k1[i] + DP::a62 * k2[i] + DP::a63 * k3[i] + DP::a64 * k4[i] + DP::a65 * k5[i]);
    k6 = detail::raw_rhs(tmp, q);
    for (std::size_t i = 0; i < n; ++i)
      y_new[i] = y[i] + h * (DP::b1 * k1[i] + DP::b3 * k3[i] + DP::b4 * k4[i] + DP::b5 * k5[i] + DP::b6 * k6[i]);
    k7 = detail::raw_rhs(y_new, q);
    for (std::size_t i = 0; i < n; ++i)
      err[i] = h * (DP::e1 * k1[i] + DP::e3 * k3[i] + DP::e4 * k4[i] + DP::e5 * k5[i] + DP::e6 * k6[i] + DP::e7 * k7[i]);

    const double e = error_scale(err, y, y_new);
    if (!std::isfinite(e)) {
      ++traj.rejected_steps;
      h *= 0.2;
      last_rejected = true;
      continue;
    }
    if (e <= 1.0) {
      t = (h == t_end - t) ? t_end : t + h;
      y = y_new;
      k1 = k7;
      ++traj.accepted_steps;
      traj.max_error_estimate = std::max(traj.max_error_estimate, e);
      snapshot(t, y, k1);

      const auto cp = closest_pair(y);
      if (n >= 2 && cp.distance < opts.collision_tol * diam0) {
        traj.termination = Trajectory::Termination::CollisionDetected;
        traj.collision_pair = cp;
        traj.collision_time = t;
        return traj;
      }
      double fac = e == 0.0 ? 10.0 : safety * std::pow(e, -alpha) * std::pow(err_prev, beta);
      fac = std::clamp(fac, 0.2, last_rejected ? 1.0 : 10.0);
      h *= fac;
      err_prev = std::max(e, 1e-4);
      last_rejected = false;
    } else {
      ++traj.rejected_steps;
      h *= std::max(0.2, safety * std::pow(e, -alpha));
      last_rejected = true;
    }
  }
  return traj;
}

namespace detail {

inline std::vector<Complex> monic_from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> c{Complex(1.0)};
  for (const auto& r : roots) {
    std::vector<Complex> next(c.size() + 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return c;
}

inline std::vector<Complex> cmul(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<Complex> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

} // namespace detail

/// Evolves the roots of p (charge 1) and q (charge -lambda) over dt under the
/// vortex flow and returns the largest coefficient of
///   q dp/dt - lambda p dq/dt + {p, q}_lambda / 2
/// with dp/dt, dq/dt from forward differences of the monic root products.
/// Along the flow this expression vanishes, so the result is O(dt).
inline double bilinear_residual(const ExactPoly& p, const ExactPoly& q, const Rational& lambda, double dt) {
  if (!(dt > 0)) throw InvariantViolation("bilinear_residual: dt must be positive");
  if (!is_squarefree(p) || !is_squarefree(q)) throw NotSquarefree("bilinear_residual: inputs must be squarefree");
  if (!are_coprime(p, q)) throw NotCoprime("bilinear_residual: p and q share a root");

  RootResult pr, qr;
  if (p.degree() >= 1) pr = roots(p);
  if (q.degree() >= 1) qr = roots(q);
  const double lam = to_double(lambda);
  const ChargeSystem start = charge_system_from_pair(pr, qr, lam, {});

  IntegratorOptions opts;
  opts.rel_tol = 1e-13;
  opts.abs_tol = 1e-14;
  opts.record = false;
  const auto traj = integrate(start, dt, opts);
  if (!traj.completed()) throw CollisionError("bilinear_residual: flow did not reach dt");

  const std::size_t np = pr.roots.size();
  const auto& z0 = start.positions;
  const auto& z1 = traj.final_state.positions;
  const auto p0 = detail::monic_from_roots({z0.begin(), z0.begin() + static_cast<long>(np)});
  const auto q0 = detail::monic_from_roots({z0.begin() + static_cast<long>(np), z0.end()});
  const auto p1 = detail::monic_from_roots({z1.begin(), z1.begin() + static_cast<long>(np)});
  const auto q1 = detail::monic_from_roots({z1.begin() + static_cast<long>(np), z1.end()});

  std::vector<Complex> dp(p0.size()), dq(q0.size());
  for (std::size_t i = 0; i < p0.size(); ++i) dp[i] = (p1[i] - p0[i]) / dt;
  for (std::size_t i = 0; i < q0.size(); ++i) dq[i] = (q1[i] - q0[i]) / dt;

  auto lhs = detail::cmul(q0, dp);
  const auto rhs = detail::cmul(p0, dq);
  lhs.resize(std::max(lhs.size(), rhs.size()));
  for (std::size_t i = 0; i < rhs.size(); ++i) lhs[i] -= lam * rhs[i];
  // The exact bracket of the monic pair.
  const ExactPoly br = bracket(make_monic(p), make_monic(q), BracketParams(lambda));
  lhs.resize(std::max(lhs.size(), br.coeffs().size()));
  for (std::size_t i = 0; i < br.coeffs().size(); ++i) lhs[i] += 0.5 * to_double(br.coeffs()[i]);

  double worst = 0.0;
  for (const auto& c : lhs) worst = std::max(worst, std::abs(c));
  return worst;
}

} // namespace charge_ladder

#endif
