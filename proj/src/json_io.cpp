#include "rdens/json_io.hpp"

namespace rdens {

std::string fraction(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

Json to_json(const TowerData& tower) {
  return Json{{"ell", tower.ell}, {"t", tower.t}, {"deg_ell", tower.deg_ell}, {"z", tower.z}, {"has_i", tower.has_i}};
}

Json to_json(const DivisibilityParameters& params) {
  Json j;
  j["conductor"] = params.field.conductor();
  j["ell"] = params.ell;
  j["rank"] = params.rank();
  j["d"] = params.d;
  j["h"] = params.h;
  Json roots = Json::array(), torsion = Json::array();
  for (const auto& b : params.B) roots.push_back(format_element(b));
  for (const auto& z : params.zeta) torsion.push_back(format_element(z));
  j["B"] = roots;
  j["zeta"] = torsion;
  j["basis_change"] = params.basis_change;
  j["independence_certified"] = params.independence_certified;
  j["rounds"] = params.rounds;
  return j;
}

Json to_json(const QuotientStructure& q) {
  return Json{{"n", q.n}, {"delta", q.delta}, {"vH", q.vH}, {"total_valuation", q.total_valuation}};
}

Json to_json(const DensityResult& result) {
  Json j;
  j["density"] = fraction(result.value);
  j["decimal"] = result.value.get_d();
  j["path"] = to_string(result.path);
  j["tau"] = result.tau;
  j["tau_i"] = result.tau_i;
  j["tower"] = to_json(result.tower);
  if (result.params) j["params"] = to_json(*result.params);
  if (result.density_k4) {
    j["density_k4"] = fraction(*result.density_k4);
    j["c"] = result.c;
    j["kummer_degree_k4"] = result.kummer_degree_k4.get_str();
  }
  return j;
}

Json to_json(const DensityBracket& bracket) {
  return Json{{"lower", fraction(bracket.lower)},
              {"upper", fraction(bracket.upper)},
              {"width", fraction(bracket.upper - bracket.lower)},
              {"terms", bracket.terms},
              {"lower_decimal", bracket.lower.get_d()},
              {"upper_decimal", bracket.upper.get_d()}};
}

Json to_json(const EmpiricalReport& report) {
  Json skipped = Json::object();
  for (const auto& [k, v] : report.skipped) skipped[k] = v;
  return Json{{"bound", report.bound},
              {"convention", to_string(report.convention)},
              {"total", report.total},
              {"good", report.good},
              {"matched", report.matched},
              {"skipped", skipped},
              {"observed", fraction(report.observed)},
              {"observed_decimal", report.observed.get_d()},
              {"exact", fraction(report.exact)},
              {"exact_decimal", report.exact.get_d()},
              {"abs_error", report.abs_error},
              {"rel_error", report.rel_error},
              {"elapsed_ms", report.elapsed_ms}};
}

}  // namespace rdens
