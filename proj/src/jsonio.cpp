// Copyright (c) 2026 the pxlap authors
// SPDX-License-Identifier: Apache-2.0

#include "pxlap/jsonio.hpp"

#include <fstream>
#include <stdexcept>

namespace pxlap {

ordered_json json_of(const std::vector<CheckItem>& checks) {
  ordered_json arr = ordered_json::array();
  for (const auto& c : checks)
    arr.push_back(ordered_json{{"name", c.name},
                               {"passed", c.passed},
                               {"lhs", c.lhs},
                               {"rhs", c.rhs}});
  return arr;
}

ordered_json json_of(const ModularReport& r) {
  return ordered_json{{"modular", r.modular_value},
                      {"norm", r.luxemburg_norm},
                      {"iters", r.bisection_iters},
                      {"residual", r.residual}};
}

ordered_json json_of(const RelationReport& r) {
  return ordered_json{{"modular", r.modular},
                      {"norm", r.norm},
                      {"assertions", json_of(r.checks)},
                      {"all_ok", r.all_ok}};
}

ordered_json json_of(const PairingReport& r) {
  return ordered_json{{"pairing", r.pairing},
                      {"norm_u", r.norm_u},
                      {"norm_v_conj", r.norm_v_conj},
                      {"bound", r.bound},
                      {"passed", r.passed}};
}

ordered_json json_of(const ComparisonReport& r) {
  return ordered_json{{"precondition_ok", r.precondition_ok},
                      {"norm_alpha", r.norm_alpha},
                      {"norm_beta", r.norm_beta},
                      {"bound", r.bound},
                      {"passed", r.passed}};
}

ordered_json json_of(const SeminormReport& r) {
  return ordered_json{
      {"gagliardo_modular", r.gagliardo_modular},
      {"seminorm", r.seminorm},
      {"combined_modular", r.combined_modular},
      {"norm_sum", r.norm_sum},
      {"norm_luxemburg", r.norm_luxemburg},
      {"iters", r.bisection_iters},
      {"residual", r.residual},
      {"assertions", json_of(r.checks)},
      {"all_ok", r.all_ok},
      {"stats",
       ordered_json{{"pair_samples", r.stats.pair_samples},
                    {"diag_samples", r.stats.diag_samples},
                    {"tail_samples", r.stats.tail_samples},
                    {"interior_cells", r.stats.interior_cells},
                    {"exterior_cells", r.stats.exterior_cells}}}};
}

ordered_json json_of(const LogHolderReport& r) {
  ordered_json per = ordered_json::array();
  for (const auto& [eps, sup] : r.per_epsilon)
    per.push_back(ordered_json{{"epsilon", eps}, {"sup", sup}});
  return ordered_json{{"sup_value", r.sup_value},
                      {"per_epsilon", per},
                      {"pairs_used", r.pairs_used}};
}

ordered_json json_of(const SolveReport& r, const std::string& solution_csv) {
  return ordered_json{{"converged", r.converged},
                      {"iterations", r.iterations},
                      {"energy", r.energy},
                      {"residual", r.residual},
                      {"sup", r.sup},
                      {"flagged_small", r.flagged_small},
                      {"solution_csv", solution_csv}};
}

ordered_json json_of(const DeGiorgiTrace& t) {
  ordered_json recs = ordered_json::array();
  for (const auto& rec : t.records)
    recs.push_back(ordered_json{{"n", rec.n},
                                {"k", rec.k},
                                {"measure", rec.measure},
                                {"Z", rec.Z}});
  return ordered_json{{"k_star", t.k_star},
                      {"records", recs},
                      {"fitted_K", t.fitted_K},
                      {"fitted_b", t.fitted_b},
                      {"vanished", t.vanished},
                      {"vanish_level", t.vanish_level},
                      {"assertions", json_of(t.level_checks)},
                      {"all_ok", t.all_ok}};
}

ordered_json json_of(const RecursionTrace& t) {
  return ordered_json{{"Z", t.Z},
                      {"hypothesis_met", t.hypothesis_met},
                      {"diverged", t.diverged},
                      {"converged", t.converged},
                      {"n0", t.n0},
                      {"tail_ok", t.tail_ok}};
}

ordered_json json_of(const LinfFitReport& r) {
  ordered_json pts = ordered_json::array();
  for (const auto& p : r.points)
    pts.push_back(ordered_json{{"norm", p.norm}, {"sup", p.sup}});
  return ordered_json{{"C", r.C},
                      {"tau1", r.tau1},
                      {"tau2", r.tau2},
                      {"violations", r.violations},
                      {"points", pts}};
}

ordered_json json_of(const SubspaceReport& r) {
  return ordered_json{{"n", r.n},
                      {"c_n1", r.c_n1},
                      {"c_n2", r.c_n2},
                      {"t3", r.t3},
                      {"r_n", r.r_n},
                      {"sup_sample", r.sup_sample},
                      {"passed", r.passed},
                      {"scan_failed", r.scan_failed},
                      {"sign_ok", r.sign_ok},
                      {"sphere_samples", r.sphere_samples}};
}

ordered_json json_of(const ImbeddingReport& r) {
  return ordered_json{{"max_ratio", r.max_ratio},
                      {"per_trial", r.per_trial},
                      {"level_max", r.level_max},
                      {"refinement_stable", r.refinement_stable}};
}

void write_json_file(const std::string& path, const ordered_json& j) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << j.dump(2) << "\n";
  if (!os) throw std::runtime_error("write failed: " + path);
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os << text;
  if (!os) throw std::runtime_error("write failed: " + path);
}

namespace {

bool type_matches(const std::string& type, const ordered_json& v) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "number") return v.is_number();
  if (type == "integer") return v.is_number_integer() || v.is_number_unsigned();
  if (type == "boolean") return v.is_boolean();
  if (type == "null") return v.is_null();
  return false;
}

void validate_into(const ordered_json& schema, const ordered_json& value,
                   const std::string& where, std::vector<std::string>& out) {
  if (schema.contains("type")) {
    std::string type = schema.at("type").get<std::string>();
    if (!type_matches(type, value)) {
      out.push_back(where + ": expected type " + type + ", got " +
                    std::string(value.type_name()));
      return; // structural checks below assume the type matched
    }
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& cand : schema.at("enum"))
      if (cand == value) found = true;
    if (!found) out.push_back(where + ": value not in the allowed set");
  }
  if (schema.contains("minimum") && value.is_number()) {
    double min = schema.at("minimum").get<double>();
    if (value.get<double>() < min)
      out.push_back(where + ": value below minimum " + std::to_string(min));
  }
  if (value.is_object()) {
    if (schema.contains("required"))
      for (const auto& req : schema.at("required")) {
        std::string key = req.get<std::string>();
        if (!value.contains(key))
          out.push_back(where + ": missing required key '" + key + "'");
      }
    const ordered_json* props =
        schema.contains("properties") ? &schema.at("properties") : nullptr;
    if (props != nullptr)
      for (auto it = props->begin(); it != props->end(); ++it)
        if (value.contains(it.key()))
          validate_into(it.value(), value.at(it.key()), where + "." + it.key(),
                        out);
    if (schema.contains("additionalProperties") &&
        schema.at("additionalProperties").is_boolean() &&
        !schema.at("additionalProperties").get<bool>())
      for (auto it = value.begin(); it != value.end(); ++it)
        if (props == nullptr || !props->contains(it.key()))
          out.push_back(where + ": unexpected key '" + it.key() + "'");
  }
  if (value.is_array() && schema.contains("items")) {
    const ordered_json& items = schema.at("items");
    for (std::size_t i = 0; i < value.size(); ++i)
      validate_into(items, value.at(i), where + "[" + std::to_string(i) + "]",
                    out);
  }
}

} // namespace

std::vector<std::string> validate_schema(const ordered_json& schema,
                                         const ordered_json& value,
                                         const std::string& where) {
  std::vector<std::string> out;
  validate_into(schema, value, where, out);
  return out;
}

} // namespace pxlap
