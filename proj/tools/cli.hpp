#ifndef CHARGE_LADDER_TOOLS_CLI_HPP
#define CHARGE_LADDER_TOOLS_CLI_HPP

// Command-line front end. Kept in a header so the test suite can drive it
// in-process with captured streams.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "charge_ladder/charge_ladder.hpp"
#include "charge_ladder/json_io.hpp"

namespace charge_ladder::cli {

// Exit codes, one per outcome class.
enum ExitCode : int {
  kOk = 0,            // success / positive outcome
  kNegative = 1,      // obstructed, not an equilibrium, incompatible
  kUsage = 2,         // malformed input, unsupported lambda, violated precondition
  kRootFailure = 3,   // root finder did not converge
  kCollision = 4,     // charges collided during simulation
  kStepFailure = 5,   // step-size underflow or step limit
  kInternal = 6,      // internal invariant violated
};

inline constexpr int kMaxConstantIndex = 12;
inline constexpr const char* kTolEnv = "CHARGE_LADDER_TOL";

inline double default_force_tol() {
  if (const char* env = std::getenv(kTolEnv)) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0)) throw ParseError(std::string(kTolEnv) + " must be a positive number");
    return v;
  }
  return kDefaultForceTol;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("invalid JSON in '" + path + "': " + e.what());
  }
}

// A polynomial file holds either a polynomial object or, with `key`, an object
// containing that key (the output of `generate`).
inline ExactPoly read_poly(const std::string& path, const std::string& key) {
  const json j = read_json_file(path);
  if (j.is_object() && j.contains(key) && j.at(key).is_object()) return poly_from_json(j.at(key));
  return poly_from_json(j);
}

struct PairInputs {
  std::string p_file, q_file, pair_file;

  void add_to(CLI::App* app) {
    app->add_option("--p", p_file, "JSON file with the polynomial p");
    app->add_option("--q", q_file, "JSON file with the polynomial q");
    app->add_option("--pair", pair_file, "JSON file with both 'p' and 'q' (e.g. output of generate)");
  }
  std::pair<ExactPoly, ExactPoly> load() const {
    if (!pair_file.empty()) {
      const json j = read_json_file(pair_file);
      if (!j.is_object() || !j.contains("p") || !j.contains("q"))
        throw ParseError("pair file needs 'p' and 'q' polynomials");
      return {poly_from_json(j.at("p")), poly_from_json(j.at("q"))};
    }
    if (p_file.empty() || q_file.empty()) throw ParseError("give --pair or both --p and --q");
    return {read_poly(p_file, "p"), read_poly(q_file, "q")};
  }
};

inline std::string constant_flag(const std::string& stem, int i) { return stem + std::to_string(i); }

inline void write_csv_positions(std::ostream& os, const ChargeSystem& sys) {
  os << "re,im,Q\n" << std::setprecision(17);
  for (std::size_t i = 0; i < sys.size(); ++i)
    os << sys.positions[i].real() << "," << sys.positions[i].imag() << "," << sys.charges[i] << "\n";
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact generation and verification of charge-equilibrium polynomials"};
  app.require_subcommand(1);

  // generate ---------------------------------------------------------------
  auto* gen = app.add_subcommand("generate", "Generate Adler-Moser or lambda = 2 ladder polynomials");
  std::string family;
  int index = 0;
  std::string method = "recurrence";
  bool with_next = false;
  std::map<std::string, std::string> raw_constants;
  gen->add_option("family", family, "adler-moser | lambda2")->required()->check(CLI::IsMember({"adler-moser", "lambda2"}));
  gen->add_option("index", index, "n for adler-moser (n >= 0), i for lambda2 (any integer)")->required();
  gen->add_option("--method", method, "adler-moser construction: recurrence | wronskian")
      ->check(CLI::IsMember({"recurrence", "wronskian"}));
  gen->add_flag("--with-next", with_next, "also emit theta_{n+1} (adler-moser) or q_{i+1} (lambda2)");
  for (int i = -kMaxConstantIndex; i <= kMaxConstantIndex; ++i) {
    if (i == 0) continue;
    for (const char* stem : {"t", "tau"}) {
      const std::string name = constant_flag(stem, i);
      gen->add_option_function<std::string>("--" + name, [&raw_constants, name](const std::string& v) {
        raw_constants[name] = v;
      }, "integration constant " + name);
    }
    if (i >= 2)
      for (const char* stem : {"psi-a", "psi-b"}) {
        const std::string name = constant_flag(stem, i);
        gen->add_option_function<std::string>("--" + name, [&raw_constants, name](const std::string& v) {
          raw_constants[name] = v;
        }, "Wronskian chain constant " + name);
      }
  }

  // certify ----------------------------------------------------------------
  auto* cert = app.add_subcommand("certify", "Certify log-free antiderivatives of q^(2L)/p^2 and p^(2/L)/q^2");
  PairInputs cert_in;
  cert_in.add_to(cert);
  std::string cert_lambda;
  cert->add_option("--lambda", cert_lambda, "1/2, 1 or 2")->required();

  // equilibrium ------------------------------------------------------------
  auto* eq = app.add_subcommand("equilibrium", "Check that the roots of p, q are a charge equilibrium");
  PairInputs eq_in;
  eq_in.add_to(eq);
  std::string eq_lambda, eq_k = "0", eq_format = "json";
  std::optional<double> eq_tol;
  double eq_root_tol = kDefaultRootTol;
  eq->add_option("--lambda", eq_lambda, "negative charge magnitude")->required();
  eq->add_option("--k", eq_k, "homogeneous field strength (rational)");
  eq->add_option("--tol", eq_tol, std::string("force tolerance (default ") + kTolEnv + " or 1e-8)");
  eq->add_option("--root-tol", eq_root_tol, "root residual tolerance");
  eq->add_option("--format", eq_format, "json | csv-positions")->check(CLI::IsMember({"json", "csv-positions"}));

  // solve-field ------------------------------------------------------------
  auto* sf = app.add_subcommand("solve-field", "Solve the field equation for p given q");
  std::string sf_q, sf_k = "1", sf_lambda = "2";
  sf->add_option("--q", sf_q, "JSON file with q")->required();
  sf->add_option("--k", sf_k, "field strength (nonzero rational)");
  sf->add_option("--lambda", sf_lambda, "negative charge magnitude");

  // simulate ---------------------------------------------------------------
  auto* sim = app.add_subcommand("simulate", "Integrate the root dynamics");
  std::string sim_init, sim_out, sim_format = "jsonl", sim_lambda = "2";
  double sim_t_end = 1.0;
  IntegratorOptions sim_opts;
  sim->add_option("--init", sim_init, "JSON with positions+charges, or a p/q pair")->required();
  sim->add_option("--lambda", sim_lambda, "negative charge magnitude when --init holds a p/q pair");
  sim->add_option("--t-end", sim_t_end, "final time");
  sim->add_option("--rtol", sim_opts.rel_tol, "relative tolerance");
  sim->add_option("--atol", sim_opts.abs_tol, "absolute tolerance");
  sim->add_option("--out", sim_out, "trajectory output path");
  sim->add_option("--format", sim_format, "jsonl | json | csv-positions")
      ->check(CLI::IsMember({"jsonl", "json", "csv-positions"}));

  // bracket ----------------------------------------------------------------
  auto* br = app.add_subcommand("bracket", "Evaluate the bilinear bracket of p and q");
  PairInputs br_in;
  br_in.add_to(br);
  std::string br_lambda = "1", br_k = "0";
  br->add_option("--lambda", br_lambda, "lambda");
  br->add_option("--k", br_k, "field strength");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) {
      LadderState state;
      state.index = index;
      std::vector<std::pair<Rational, Rational>> psi;
      for (const auto& [name, value] : raw_constants) {
        const Rational r = parse_rational(value);
        if (name.rfind("psi-", 0) == 0) {
          const int m = std::stoi(name.substr(5));
          if (psi.size() < static_cast<std::size_t>(m - 1)) psi.resize(static_cast<std::size_t>(m - 1));
          (name[4] == 'a' ? psi[static_cast<std::size_t>(m - 2)].first : psi[static_cast<std::size_t>(m - 2)].second) = r;
        } else if (name.rfind("tau", 0) == 0) {
          state.tau[std::stoi(name.substr(3))] = r;
        } else {
          state.t[std::stoi(name.substr(1))] = r;
        }
      }
      json params = json::object();
      if (family == "adler-moser") {
        if (index < 0) throw ParseError("adler-moser index must be non-negative");
        if (state.t.count(1) || !state.tau.empty())
          throw ParseError("adler-moser takes --t2 .. --tN only (t1 is fixed to 0)");
        const int top = with_next ? index + 1 : index;
        json doc{{"family", family}, {"index", index}, {"method", method}};
        if (method == "wronskian") {
          for (int m = 2; m <= top; ++m) {
            const auto slot = static_cast<std::size_t>(m - 2);
            const auto pr = slot < psi.size() ? psi[slot] : std::pair<Rational, Rational>{};
            params[constant_flag("psi-a", m)] = to_string(pr.first);
            params[constant_flag("psi-b", m)] = to_string(pr.second);
          }
          const ExactPoly theta = adler_moser_wronskian(index, psi);
          doc["theta"] = to_json(theta);
          doc["degree"] = theta.degree();
          if (with_next) {
            const ExactPoly next = adler_moser_wronskian(index + 1, psi);
            doc["theta_next"] = to_json(next);
            doc["p"] = to_json(theta);
            doc["q"] = to_json(next);
          }
        } else {
          if (!psi.empty()) throw ParseError("--psi-* constants apply to --method wronskian");
          params["t1"] = to_string(Rational(0));
          for (int m = 2; m <= top; ++m) params[constant_flag("t", m)] = to_string(state.t_at(m));
          const auto seq = adler_moser_sequence(top, state);
          doc["theta"] = to_json(seq[static_cast<std::size_t>(index)]);
          doc["degree"] = seq[static_cast<std::size_t>(index)].degree();
          if (with_next) {
            doc["theta_next"] = to_json(seq.back());
            doc["p"] = to_json(seq[static_cast<std::size_t>(index)]);
            doc["q"] = to_json(seq.back());
          }
        }
        doc["parameters"] = params;
        out << doc.dump(2) << "\n";
        return kOk;
      }

      if (!psi.empty()) throw ParseError("--psi-* constants apply to adler-moser only");
      Lambda2Ladder ladder(state);
      const ExactPoly& p = ladder.p(index);
      const ExactPoly& q = ladder.q(index);
      json doc{{"family", family}, {"index", index}, {"p", to_json(p)}, {"q", to_json(q)},
               {"deg_p", p.degree()}, {"deg_q", q.degree()}};
      if (with_next) {
        const ExactPoly& qn = ladder.q(index + 1);
        doc["q_next"] = to_json(qn);
        doc["deg_q_next"] = qn.degree();
      }
      const int hi = std::max(index + (with_next ? 1 : 0), 0);
      const int lo = std::min(index, 0);
      for (int j = lo; j <= hi; ++j) {
        if (j == 0) continue;
        if (j > 0) {
          params[constant_flag("tau", j)] = to_string(state.tau_at(j));
          if (j <= index) params[constant_flag("t", j)] = to_string(state.t_at(j));
        } else {
          params[constant_flag("t", j)] = to_string(state.t_at(j));
          params[constant_flag("tau", j)] = to_string(state.tau_at(j));
        }
      }
      doc["parameters"] = params;
      out << doc.dump(2) << "\n";
      return kOk;
    }

    if (*cert) {
      const Rational lambda = parse_rational(cert_lambda);
      const auto [p, q] = cert_in.load();
      const auto c = certify_rational_integrals(p, q, lambda);
      out << to_json(c).dump(2) << "\n";
      return c.rational() ? kOk : kNegative;
    }

    if (*eq) {
      const Rational lambda = parse_rational(eq_lambda);
      const Rational k = parse_rational(eq_k);
      const double tol = eq_tol ? *eq_tol : default_force_tol();
      const auto [p, q] = eq_in.load();
      const auto report = verify_equilibrium(p, q, lambda, k, tol, eq_root_tol);
      if (eq_format == "csv-positions") {
        write_csv_positions(out, report.system);
      } else {
        json doc = to_json(report);
        doc["lambda"] = to_string(lambda);
        doc["k"] = to_string(k);
        out << doc.dump(2) << "\n";
      }
      return report.equilibrium() ? kOk : kNegative;
    }

    if (*sf) {
      const Rational k = parse_rational(sf_k);
      const Rational lambda = parse_rational(sf_lambda);
      const ExactPoly q = read_poly(sf_q, "q");
      const auto report = solve_p_given_q(q, lambda, k);
      json doc = to_json(report);
      doc["q"] = to_json(make_monic(q));
      doc["k"] = to_string(k);
      doc["lambda"] = to_string(lambda);
      if (report.p) doc["bracket_zero"] = bracket(*report.p, make_monic(q), BracketParams(lambda, k)).is_zero();
      out << doc.dump(2) << "\n";
      return report.solved() ? kOk : kNegative;
    }

    if (*sim) {
      if (!(sim_t_end > 0)) throw ParseError("--t-end must be positive");
      const json init = read_json_file(sim_init);
      ChargeSystem start;
      if (init.is_object() && init.contains("positions")) {
        start = charge_system_from_json(init);
      } else if (init.is_object() && init.contains("p") && init.contains("q")) {
        const Rational lambda = parse_rational(sim_lambda);
        const ExactPoly p = poly_from_json(init.at("p")), q = poly_from_json(init.at("q"));
        RootResult pr, qr;
        if (p.degree() >= 1) pr = roots(p);
        if (q.degree() >= 1) qr = roots(q);
        start = charge_system_from_pair(pr, qr, to_double(lambda), {});
      } else {
        throw ParseError("--init needs 'positions'/'charges' or 'p'/'q'");
      }
      const auto traj = integrate(start, sim_t_end, sim_opts);

      std::ofstream file;
      std::ostream* sink = nullptr;
      if (!sim_out.empty()) {
        file.open(sim_out);
        if (!file) throw ParseError("cannot write '" + sim_out + "'");
        sink = &file;
      }
      if (sink) {
        if (sim_format == "jsonl") {
          for (const auto& s : traj.samples) *sink << to_json(s).dump() << "\n";
        } else if (sim_format == "json") {
          json arr = json::array();
          for (const auto& s : traj.samples) arr.push_back(to_json(s));
          *sink << arr.dump(2) << "\n";
        } else {
          write_csv_positions(*sink, traj.final_system());
        }
      }

      const Complex h0 = traj.samples.front().invariant;
      double drift = 0.0;
      for (const auto& s : traj.samples) drift = std::max(drift, std::abs(s.invariant - h0) / (1.0 + std::abs(h0)));
      double max_disp = 0.0;
      for (std::size_t i = 0; i < start.size(); ++i)
        max_disp = std::max(max_disp, std::abs(traj.final_state.positions[i] - start.positions[i]));
      json summary{{"termination", to_string(traj.termination)},
                   {"t_end", sim_t_end},
                   {"t_reached", traj.final_state.t},
                   {"accepted_steps", traj.accepted_steps},
                   {"rejected_steps", traj.rejected_steps},
                   {"max_error_estimate", traj.max_error_estimate},
                   {"H_initial", to_json(h0)},
                   {"H_final", to_json(traj.final_state.invariant)},
                   {"H_max_relative_drift", drift},
                   {"max_displacement", max_disp},
                   {"charges", start.charges},
                   {"tolerances",
                    {{"rtol", sim_opts.rel_tol},
                     {"atol", sim_opts.abs_tol},
                     {"collision_tol", sim_opts.collision_tol},
                     {"near_collision_ratio", sim_opts.near_collision_ratio}}}};
      if (traj.collision_pair)
        summary["collision"] = {{"time", traj.collision_time},
                                {"pair", {traj.collision_pair->i, traj.collision_pair->j}},
                                {"distance", traj.collision_pair->distance}};
      if (sim_out.empty() && sim_format == "csv-positions") write_csv_positions(out, traj.final_system());
      out << summary.dump(2) << "\n";
      switch (traj.termination) {
        case Trajectory::Termination::Completed: return kOk;
        case Trajectory::Termination::CollisionDetected: return kCollision;
        default: return kStepFailure;
      }
    }

    if (*br) {
      const Rational lambda = parse_rational(br_lambda);
      const Rational k = parse_rational(br_k);
      const auto [p, q] = br_in.load();
      const ExactPoly b = bracket(p, q, BracketParams(lambda, k));
      out << json{{"bracket", to_json(b)}, {"zero", b.is_zero()}, {"lambda", to_string(lambda)}, {"k", to_string(k)}}
                 .dump(2)
          << "\n";
      return kOk;
    }
  } catch (const ConvergenceFailure& e) {
    err << e.what() << "\n";
    return kRootFailure;
  } catch (const CollisionError& e) {
    err << e.what() << "\n";
    return kCollision;
  } catch (const StepSizeUnderflow& e) {
    err << e.what() << "\n";
    return kStepFailure;
  } catch (const InvariantViolation& e) {
    err << e.what() << "\n";
    return kInternal;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

} // namespace charge_ladder::cli

#endif
