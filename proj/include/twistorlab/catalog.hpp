#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "curvature4.hpp"
#include "errors.hpp"

namespace twistorlab {

struct ModelSpec {
  std::string name;
  std::map<std::string, double> params;
  CurvatureJet<double> jet;
  std::string notes;
  // (verdict name, expected holds); depends on t through S·t²
  std::vector<std::pair<std::string, bool>> expected;
};

struct ParamSchema {
  std::string name;
  double default_value = 0;
  std::string constraint;
};

struct ModelInfo {
  std::string name;
  std::vector<ParamSchema> params;
  std::string notes;
};

inline std::vector<ModelInfo> list_models() {
  return {
      {"sphere", {{"k", 1, "k != 0"}}, "constant sectional curvature k, S = 12k"},
      {"hyperbolic", {{"k", -1, "k < 0"}}, "constant sectional curvature k < 0"},
      {"flat", {}, "R = 0"},
      {"cp2", {{"S", 12, "S > 0"}}, "A = (S/12)I, B = 0, C = diag(S/4, 0, 0)"},
      {"s2xs2", {{"k", 1, "k != 0"}}, "product of two round spheres of curvature k"},
      {"einstein_selfdual",
       {{"S", 6, "real"},
        {"c11", 1, "real"},
        {"c22", 0.5, "real"},
        {"c12", 0, "real"},
        {"c13", 0, "real"},
        {"c23", 0, "real"}},
       "A = (S/12)I, B = 0, C symmetric with c33 = S/4 - c11 - c22"},
      {"generic", {{"seed", 1, "integer >= 0"}}, "random algebraic curvature tensor, no symmetry class"},
  };
}

namespace detail {

inline double param(const std::map<std::string, double>& given, const ModelInfo& info, const std::string& key) {
  auto it = given.find(key);
  if (it != given.end()) return it->second;
  for (const auto& p : info.params)
    if (p.name == key) return p.default_value;
  throw parameter_error("model " + info.name + ": no parameter " + key);
}

inline Riemann4<double> space_form(double k) {
  Riemann4<double> R;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) R(a, b, c, d) = k * ((a == c) * (b == d) - (a == d) * (b == c));
  return R;
}

inline bool near(double x, double target) { return std::fabs(x - target) <= 1e-8 * std::fmax(1.0, std::fabs(target)); }

}  // namespace detail

// t only feeds the expected-verdict list
inline ModelSpec model(const std::string& name, const std::map<std::string, double>& params = {}, double t = 1.0) {
  require_t(t);
  const ModelInfo* info = nullptr;
  static const auto registry = list_models();
  for (const auto& m : registry)
    if (m.name == name) info = &m;
  if (!info) throw unknown_model("unknown model: " + name);
  for (const auto& [k, v] : params) {
    bool ok = false;
    for (const auto& p : info->params) ok = ok || p.name == k;
    if (!ok) throw parameter_error("model " + name + ": no parameter " + k);
    if (!std::isfinite(v)) throw parameter_error("model " + name + ": parameter " + k + " is not finite");
  }

  ModelSpec m;
  m.name = name;
  m.notes = info->notes;
  for (const auto& p : info->params) m.params[p.name] = detail::param(params, *info, p.name);

  double tt = t * t;
  bool einstein = true, self_dual = true, ricci_flat = false, cc = false;
  double S = 0;
  bool in_scope = true;  // self-dual, so the Ricci-parallel classification applies

  if (name == "sphere" || name == "hyperbolic") {
    double k = m.params["k"];
    if (name == "sphere" && k == 0) throw parameter_error("sphere: k must be nonzero");
    if (name == "hyperbolic" && !(k < 0)) throw parameter_error("hyperbolic: k must be negative");
    m.jet.R = detail::space_form(k);
    S = 12 * k;
    cc = true;
  } else if (name == "flat") {
    ricci_flat = cc = true;
  } else if (name == "cp2") {
    S = m.params["S"];
    if (!(S > 0)) throw parameter_error("cp2: S must be positive");
    CurvatureBlocks<double> k;
    k.A = identity<double, 3>() * (S / 12);
    k.C(0, 0) = S / 4;
    m.jet.R = assemble_from_blocks(k);
  } else if (name == "s2xs2") {
    double k = m.params["k"];
    if (k == 0) throw parameter_error("s2xs2: k must be nonzero");
    for (int o : {0, 2}) {
      m.jet.R(o, o + 1, o, o + 1) = m.jet.R(o + 1, o, o + 1, o) = k;
      m.jet.R(o + 1, o, o, o + 1) = m.jet.R(o, o + 1, o + 1, o) = -k;
    }
    S = 4 * k;
    self_dual = false;
    in_scope = false;
  } else if (name == "einstein_selfdual") {
    S = m.params["S"];
    CurvatureBlocks<double> k;
    k.A = identity<double, 3>() * (S / 12);
    k.C(0, 0) = m.params["c11"];
    k.C(1, 1) = m.params["c22"];
    k.C(2, 2) = S / 4 - m.params["c11"] - m.params["c22"];
    k.C(0, 1) = k.C(1, 0) = m.params["c12"];
    k.C(0, 2) = k.C(2, 0) = m.params["c13"];
    k.C(1, 2) = k.C(2, 1) = m.params["c23"];
    m.jet.R = assemble_from_blocks(k);
    Mat3<double> c0 = identity<double, 3>() * (S / 12);
    cc = max_abs_diff(k.C, c0) == 0;
    ricci_flat = S == 0;
  } else {
    double seed = m.params["seed"];
    if (seed < 0 || seed != std::floor(seed) || seed > 9007199254740992.0)
      throw parameter_error("generic: seed must be a non-negative integer");
    m.jet = random_curvature(static_cast<std::uint64_t>(seed));
    m.jet.dR.reset();
    auto b = block_decompose(m.jet.R);
    S = scalar(m.jet.R);
    einstein = einstein_residual(b) < 1e-12;
    self_dual = self_dual_residual(b) < 1e-12;
    in_scope = self_dual;
  }
  m.jet.dR = DRiemann4<double>{};
  m.jet.d2 = SecondContractions<double>{};

  bool s6 = detail::near(S * tt, 6), s12 = detail::near(S * tt, 12);
  bool tw_einstein = einstein && self_dual && (s6 || s12);
  bool ke = einstein && self_dual && s12;
  bool s4 = cc && s12;
  auto& e = m.expected;
  e = {{"einstein", einstein},
       {"self_dual", self_dual},
       {"ricci_flat", ricci_flat},
       {"constant_curvature", cc},
       {"twistor_einstein", tw_einstein},
       {"kahler_einstein", ke},
       {"bochner_flat", s4},
       {"bochner_parallel", s4},
       {"harmonic_j", self_dual},
       {"div_nijenhuis", self_dual},
       {"lcf_obstruction", true}};
  if (in_scope) {
    e.push_back({"ricci_parallel", tw_einstein || ricci_flat});
    e.push_back({"locally_symmetric", s4 || ricci_flat});
  }
  return m;
}

}  // namespace twistorlab
