#ifndef CHARGE_LADDER_JSON_IO_HPP
#define CHARGE_LADDER_JSON_IO_HPP

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "dynamics.hpp"
#include "errors.hpp"
#include "generators.hpp"
#include "numerics.hpp"
#include "poly.hpp"
#include "spectral.hpp"

namespace charge_ladder {

using json = nlohmann::json;

/// {"var": "z", "coeffs": ["<num>/<den>", ...]}, ascending degree.
inline json to_json(const ExactPoly& p, const std::string& var = "z") {
  json coeffs = json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(to_string(c));
  return json{{"var", var}, {"coeffs", std::move(coeffs)}};
}

/// Accepts the polynomial object; coefficients may be rational strings or
/// JSON integers. Trailing zeros are stripped.
inline ExactPoly poly_from_json(const json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j.at("coeffs").is_array())
    throw ParseError("polynomial JSON must be an object with a 'coeffs' array");
  std::vector<Rational> coeffs;
  for (const auto& c : j.at("coeffs")) {
    if (c.is_string())
      coeffs.push_back(parse_rational(c.get<std::string>()));
    else if (c.is_number_integer())
      coeffs.emplace_back(c.get<long>());
    else
      throw ParseError("polynomial coefficient must be a rational string");
  }
  return ExactPoly(std::move(coeffs));
}

inline json to_json(Complex c) { return json::array({c.real(), c.imag()}); }

inline Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("complex numbers are serialized as [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json to_json(const std::vector<Complex>& v) {
  json a = json::array();
  for (const auto& c : v) a.push_back(to_json(c));
  return a;
}

inline json to_json(const RationalityCertificate& cert) {
  json anti = json::array(), obs = json::array();
  for (const auto& a : cert.antiderivatives)
    anti.push_back({{"integrand", a.integrand},
                    {"poly_part", to_json(a.poly_part)},
                    {"rational_numerator", to_json(a.rational_numerator)},
                    {"denominator", to_json(a.denominator)}});
  for (const auto& o : cert.obstructions)
    obs.push_back({{"integrand", o.integrand},
                   {"log_numerator", to_json(o.log_numerator)},
                   {"denominator", to_json(o.denominator)}});
  return json{{"lambda", to_string(cert.lambda)},
              {"bracket_zero", cert.bracket_zero},
              {"rational", cert.rational()},
              {"antiderivatives", std::move(anti)},
              {"obstructions", std::move(obs)}};
}

inline json to_json(const EquilibriumReport& r) {
  return json{{"equilibrium", r.equilibrium()},
              {"max_force_norm", r.max_force_norm},
              {"per_charge_forces", to_json(r.per_charge_forces)},
              {"root_residuals", r.root_residuals},
              {"positions", to_json(r.system.positions)},
              {"charges", r.system.charges},
              {"field", to_json(r.system.field)},
              {"multiple_root_warning", r.multiple_root_warning},
              {"tolerances", {{"force_tol", r.force_tol}, {"root_tol", r.root_tol}, {"collision_tol", r.collision_tol}}}};
}

inline json to_json(const FieldSolveReport& r) {
  return json{{"status", r.solved() ? "solved" : "incompatible"},
              {"p", r.p ? to_json(*r.p) : json(nullptr)},
              {"free_parameters", r.free_parameters},
              {"rank", r.rank},
              {"unknowns", r.unknowns},
              {"target_degree", r.target_degree}};
}

/// One JSON-lines record per accepted step.
inline json to_json(const TrajectorySample& s) {
  return json{{"t", s.t}, {"positions", to_json(s.positions)}, {"velocities", to_json(s.velocities)},
              {"H", to_json(s.invariant)}};
}

/// {"positions": [[re, im], ...], "charges": [...], "field": [re, im]?}
inline ChargeSystem charge_system_from_json(const json& j) {
  if (!j.is_object() || !j.contains("positions") || !j.contains("charges"))
    throw ParseError("charge system JSON needs 'positions' and 'charges'");
  ChargeSystem sys;
  for (const auto& z : j.at("positions")) sys.positions.push_back(complex_from_json(z));
  for (const auto& q : j.at("charges")) {
    if (!q.is_number()) throw ParseError("charges must be numbers");
    sys.charges.push_back(q.get<double>());
  }
  if (j.contains("field")) sys.field = complex_from_json(j.at("field"));
  if (sys.positions.size() != sys.charges.size()) throw ParseError("positions and charges differ in length");
  return sys;
}

} // namespace charge_ladder

#endif
