#pragma once

// JSON, CSV and aligned-text renderings of results.

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "harness.hpp"

namespace ffgpd {

using Json = nlohmann::ordered_json;

inline Json to_json(const ExceptionalCert& c) {
  return Json{{"n", c.n()}, {"sigma", to_string(c.sigma())}, {"tau", to_string(c.tau())}};
}

inline Json to_json(const ExceptionalVerdict& v) {
  if (const auto* c = std::get_if<ExceptionalCert>(&v)) return Json{{"verdict", "Exceptional"}, {"certificate", to_json(*c)}};
  return Json{{"verdict", "NonExceptionalUpTo"}, {"max_n", std::get<NonExceptionalUpTo>(v).max_n}};
}

inline Json to_json(const SeparabilityVerdict& v) {
  struct Visitor {
    Json operator()(const SeparableSquarefree&) const { return Json{{"verdict", "SeparableSquarefree"}}; }
    Json operator()(const NotSquarefree&) const { return Json{{"verdict", "NotSquarefree"}}; }
    Json operator()(const SeparabilityUnknown&) const { return Json{{"verdict", "Unknown"}}; }
    Json operator()(const InseparablePresent& s) const {
      return Json{{"verdict", "InseparablePresent"},
                  {"separable_part", to_string(s.separable_part)},
                  {"inseparable_part", to_string(s.inseparable_part)}};
    }
  };
  return std::visit(Visitor{}, v);
}

namespace detail {

inline Json text_list(const std::vector<RatFunc>& fs) {
  Json a = Json::array();
  for (const auto& f : fs) a.push_back(to_string(f));
  return a;
}

}  // namespace detail

inline Json to_json(const ScanReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json j{{"H", row.H}, {"count", row.count}, {"skipped", row.skipped}};
    if (row.count > 0) {
      j["min_delta"] = row.min_delta;
      j["max_delta"] = row.max_delta;
      j["mean_delta"] = row.mean_delta;
      j["min_gap"] = row.min_gap;
      j["argmin"] = to_string(*row.argmin);
    }
    j["skipped_f"] = detail::text_list(row.skipped_f);
    rows.push_back(std::move(j));
  }
  Json out{{"F", r.F}, {"mode", r.mode}, {"H_max", r.H_max}, {"rows", std::move(rows)}};
  if (r.lambda) {
    out["lambda"] = Json{{"value", r.lambda->value}, {"H", r.lambda->H}, {"min_delta", r.lambda->d}};
  } else {
    out["lambda"] = nullptr;
  }
  return out;
}

inline Json to_json(const ExScanReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json j{{"H", row.H},           {"count", row.count},       {"filtered", row.filtered},
           {"skipped", row.skipped}, {"empty", row.empty},       {"bound", row.bound}};
    if (!row.empty) {
      j["min_delta"] = row.min_delta;
      j["min_margin"] = row.min_margin;
    }
    Json viol = Json::array();
    for (const auto& v : row.violations) viol.push_back(Json{{"f", to_string(v.f)}, {"delta", v.delta}});
    j["violations"] = std::move(viol);
    j["skipped_f"] = detail::text_list(row.skipped_f);
    rows.push_back(std::move(j));
  }
  return Json{{"F", r.F},
              {"certificate", to_json(r.cert)},
              {"eps", std::to_string(r.eps.num) + "/" + std::to_string(r.eps.den)},
              {"mode", r.mode},
              {"H_max", r.H_max},
              {"rows", std::move(rows)},
              {"total_violations", r.total_violations},
              {"clean_from", r.clean_from}};
}

inline Json to_json(const SequenceReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json j{{"k", row.k}, {"f", to_string(row.f)}, {"height", row.height}};
    j["delta"] = row.delta ? Json(*row.delta) : Json(nullptr);
    j["identity"] = row.identity;
    rows.push_back(std::move(j));
  }
  return Json{{"F", r.F},
              {"certificate", to_json(r.cert)},
              {"rows", std::move(rows)},
              {"heights_increasing", r.heights_increasing},
              {"identities_hold", r.identities_hold},
              {"max_delta", r.max_delta}};
}

inline Json to_json(const PathologyReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back(Json{{"k", row.k}, {"height", row.height}, {"delta", row.delta}, {"identity", row.identity}});
  return Json{{"F", r.F}, {"rows", std::move(rows)}};
}

inline Json to_json(const AbcReport& r) {
  Json b = Json::array();
  for (const auto& c : r.constants) b.push_back(to_string(c));
  return Json{{"u", to_string(r.u)}, {"b", std::move(b)}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"slack", r.slack()}};
}

inline Json to_json(const Divisor& d) {
  Json a = Json::array();
  for (const auto& [P, m] : d.terms()) a.push_back(Json{{"place", to_string(P)}, {"degree", P.degree()}, {"mult", m}});
  return a;
}

inline Json to_json(const Factorization& f) {
  Json a = Json::array();
  for (const auto& [g, e] : f.factors) a.push_back(Json{{"factor", to_string(g)}, {"multiplicity", e}});
  return Json{{"unit", to_string(f.unit)}, {"factors", std::move(a)}};
}

// ---------------------------------------------------------------------------
// Text and CSV.

namespace detail {

inline std::string cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  if (v.is_number_float()) {
    std::ostringstream s;
    s << std::setprecision(6) << v.get<double>();
    return s.str();
  }
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) s += (s.empty() ? "" : " ") + cell(e);
    return s;
  }
  if (v.is_object()) {
    std::string s;
    for (const auto& [k, e] : v.items()) s += (s.empty() ? "" : " ") + k + "=" + cell(e);
    return s;
  }
  return v.dump();
}

/// Columns of a table: the union of keys in first-seen order.
inline std::vector<std::string> columns(const Json& rows) {
  std::vector<std::string> cols;
  for (const auto& r : rows)
    for (const auto& [k, v] : r.items())
      if (std::find(cols.begin(), cols.end(), k) == cols.end()) cols.push_back(k);
  return cols;
}

inline bool is_table(const Json& v) {
  if (!v.is_array() || v.empty()) return false;
  for (const auto& e : v)
    if (!e.is_object()) return false;
  return true;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace detail

/// Scalars as "key  value" lines and arrays of objects as aligned tables.
inline std::string render_text(const Json& result) {
  std::ostringstream out;
  std::size_t width = 0;
  for (const auto& [k, v] : result.items())
    if (!detail::is_table(v)) width = std::max(width, k.size());
  for (const auto& [k, v] : result.items()) {
    if (detail::is_table(v)) continue;
    out << std::left << std::setw(static_cast<int>(width)) << k << "  " << detail::cell(v) << "\n";
  }
  for (const auto& [k, v] : result.items()) {
    if (!detail::is_table(v)) continue;
    const auto cols = detail::columns(v);
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> w;
    for (const auto& c : cols) w.push_back(c.size());
    for (const auto& r : v) {
      std::vector<std::string> line;
      for (std::size_t i = 0; i < cols.size(); ++i) {
        line.push_back(r.contains(cols[i]) ? detail::cell(r[cols[i]]) : "");
        w[i] = std::max(w[i], line.back().size());
      }
      cells.push_back(std::move(line));
    }
    out << "\n" << k << ":\n";
    for (std::size_t i = 0; i < cols.size(); ++i)
      out << (i ? "  " : "") << std::left << std::setw(static_cast<int>(w[i])) << cols[i];
    out << "\n";
    for (const auto& line : cells) {
      for (std::size_t i = 0; i < line.size(); ++i)
        out << (i ? "  " : "") << std::left << std::setw(static_cast<int>(w[i])) << line[i];
      out << "\n";
    }
  }
  return out.str();
}

/// The first table of the result (the per-height rows of scans), or key,value pairs.
inline std::string render_csv(const Json& result) {
  std::ostringstream out;
  for (const auto& [k, v] : result.items()) {
    if (!detail::is_table(v)) continue;
    const auto cols = detail::columns(v);
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << "\n";
    for (const auto& r : v) {
      for (std::size_t i = 0; i < cols.size(); ++i)
        out << (i ? "," : "") << (r.contains(cols[i]) ? detail::csv_escape(detail::cell(r[cols[i]])) : "");
      out << "\n";
    }
    return out.str();
  }
  out << "key,value\n";
  for (const auto& [k, v] : result.items()) out << k << "," << detail::csv_escape(detail::cell(v)) << "\n";
  return out.str();
}

}  // namespace ffgpd
