#pragma once

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "lienil/checks.hpp"

namespace lienil {

inline nlohmann::ordered_json result_to_json(const CheckResult& r) {
  nlohmann::ordered_json j;
  j["check"] = r.name;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (auto& [k, v] : r.params) params[k] = v;  // std::map iterates sorted
  j["params"] = params;
  j["status"] = status_str(r.status);
  nlohmann::ordered_json dims = nlohmann::ordered_json::array();
  for (auto& line : r.dims) {
    nlohmann::ordered_json d;
    d["multidegree"] = line.degree;
    d["lhs_dim"] = line.lhs;
    d["rhs_dim"] = line.rhs;
    dims.push_back(d);
  }
  j["dims"] = dims;
  if (!r.counterexample.empty()) j["counterexample"] = r.counterexample;
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

inline std::string param_key(const CheckResult& r) {
  std::string s;
  for (auto& [k, v] : r.params) s += k + "=" + std::to_string(v) + ",";
  return s;
}

// Catalog order first, parameter order second; byte-identical output for
// identical requests (elapsed_ms aside).
inline void sort_results(std::vector<CheckResult>& results) {
  std::stable_sort(results.begin(), results.end(), [](const CheckResult& a, const CheckResult& b) {
    int ia = catalog_index(a.name), ib = catalog_index(b.name);
    if (ia != ib) return ia < ib;
    return param_key(a) < param_key(b);
  });
}

inline std::string emit_report(std::vector<CheckResult> results, const std::string& format) {
  sort_results(results);
  if (format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (auto& r : results) arr.push_back(result_to_json(r));
    return arr.dump(2) + "\n";
  }
  if (format != "text") throw std::domain_error("emit_report: format must be json or text");
  std::ostringstream out;
  size_t passed = 0;
  for (auto& r : results) {
    if (r.status == CheckStatus::Pass) ++passed;
    out << status_str(r.status);
    for (size_t i = status_str(r.status).size(); i < 14; ++i) out << ' ';
    out << r.name;
    out << "  (";
    bool first = true;
    for (auto& [k, v] : r.params) {
      if (!first) out << ", ";
      out << k << "=" << v;
      first = false;
    }
    out << ")  " << r.elapsed_ms << " ms\n";
    if (!r.counterexample.empty()) out << "    -> " << r.counterexample << "\n";
  }
  out << passed << "/" << results.size() << " checks passed\n";
  return out.str();
}

}  // namespace lienil
