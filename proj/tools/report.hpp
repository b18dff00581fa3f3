#pragma once

// JSON rendering for the CLI: sorted keys, %.17g floats, schema self-check.

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>
#include <twistorlab/twistorlab.hpp>

namespace twistorlab::report {

using json = nlohmann::json;

inline std::string fmt_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline void write(const json& j, std::string& out, int level) {
  auto pad = [&](int l) { out.append(static_cast<std::size_t>(2 * l), ' '); };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // object_t is a std::map, so keys come sorted
        if (!first) out += ",\n";
        first = false;
        pad(level + 1);
        out += json(it.key()).dump();
        out += ": ";
        write(it.value(), out, level + 1);
      }
      out += "\n";
      pad(level);
      out += "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool flat = true;
      for (const auto& e : j) flat = flat && !e.is_structured();
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write(j[i], out, level);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        pad(level + 1);
        write(j[i], out, level + 1);
      }
      out += "\n";
      pad(level);
      out += "]";
      return;
    }
    case json::value_t::number_float:
      out += fmt_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

inline std::string render(const json& j) {
  std::string out;
  write(j, out, 0);
  out += "\n";
  return out;
}

inline json matrix(const Mat4<double>& m) {
  json a = json::array();
  for (int i = 0; i < 4; ++i) {
    json row = json::array();
    for (int j = 0; j < 4; ++j) row.push_back(m(i, j));
    a.push_back(row);
  }
  return a;
}

inline json verdict(const Verdict& v) {
  json j;
  j["name"] = v.name;
  j["holds"] = v.holds;
  j["residual"] = v.residual;
  j["tolerance"] = v.tolerance;
  j["comparison"] = v.comparison;
  j["frames_sampled"] = v.frames_sampled;
  j["witness_rotation"] = v.witness ? matrix(v.witness->m) : json(nullptr);
  j["flags"] = v.flags;
  j["theorem_ref"] = v.theorem_ref;
  json d = json::object();
  for (const auto& [k, x] : v.details) d[k] = x;
  j["details"] = d;
  return j;
}

struct schema_error : std::logic_error {
  using std::logic_error::logic_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw schema_error("output failed schema check: " + what);
}

inline void check_verdict(const json& v) {
  require(v.is_object(), "verdict is not an object");
  require(v.contains("name") && v["name"].is_string(), "verdict.name");
  require(v.contains("holds") && v["holds"].is_boolean(), "verdict.holds");
  require(v.contains("residual") && (v["residual"].is_number() || v["residual"].is_null()), "verdict.residual");
  require(v.contains("tolerance") && v["tolerance"].is_number(), "verdict.tolerance");
  require(v.contains("frames_sampled") && v["frames_sampled"].is_number_integer(), "verdict.frames_sampled");
  require(v.contains("flags") && v["flags"].is_array(), "verdict.flags");
  require(v.contains("theorem_ref") && v["theorem_ref"].is_string(), "verdict.theorem_ref");
  require(v.contains("witness_rotation"), "verdict.witness_rotation");
  const auto& w = v["witness_rotation"];
  require(w.is_null() || (w.is_array() && w.size() == 4), "verdict.witness_rotation shape");
  if (!v["holds"].get<bool>()) require(!w.is_null(), "failing verdict without witness");
}

inline void check_analysis(const json& r) {
  for (const char* k : {"engine_version", "seed", "t", "input", "base", "twistor", "verdicts"})
    require(r.contains(k), std::string("report.") + k);
  require(r["t"].is_number(), "report.t");
  require(r["verdicts"].is_array(), "report.verdicts");
  for (const auto& v : r["verdicts"]) check_verdict(v);
  for (const char* k : {"sbar", "ricbar_eigenvalues", "wbar_max_abs", "acs", "nijenhuis", "bochner"})
    require(r["twistor"].contains(k), std::string("report.twistor.") + k);
}

inline void check_verify(const json& r) {
  for (const char* k : {"engine_version", "seed", "samples", "t_list", "suite", "checks", "all_hold"})
    require(r.contains(k), std::string("verify.") + k);
  require(r["checks"].is_array(), "verify.checks");
  for (const auto& v : r["checks"]) check_verdict(v);
}

inline void check_catalog(const json& r) {
  require(r.is_array(), "catalog is not an array");
  for (const auto& m : r) {
    require(m.contains("name") && m["name"].is_string(), "model.name");
    require(m.contains("params") && m["params"].is_array(), "model.params");
    require(m.contains("notes") && m["notes"].is_string(), "model.notes");
  }
}

}  // namespace twistorlab::report
