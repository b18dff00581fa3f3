#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "report.hpp"

using namespace twistorlab;
using report::json;

namespace {

constexpr int kOk = 0, kFailed = 1, kUsage = 2;

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t default_seed() {
  const char* s = std::getenv("TWISTORLAB_SEED");
  if (!s || !*s) return 0;
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(s, &pos);
    if (pos != std::string(s).size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw usage_error(std::string("TWISTORLAB_SEED is not an unsigned integer: ") + s);
  }
}

std::string fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// nested row-major array of the given rank, every extent 4
template <int R>
T4<double, R> read_tensor(const json& j, const std::string& field) {
  T4<double, R> out;
  std::vector<const json*> level{&j};
  for (int d = 0; d < R; ++d) {
    std::vector<const json*> next;
    for (const json* x : level) {
      if (!x->is_array() || x->size() != 4) throw usage_error(field + ": expected nested 4-element arrays of depth " + std::to_string(R));
      for (const auto& e : *x) next.push_back(&e);
    }
    level = std::move(next);
  }
  for (std::size_t k = 0; k < level.size(); ++k) {
    if (!level[k]->is_number()) throw usage_error(field + ": non-numeric entry");
    out.v[k] = level[k]->get<double>();
    if (!std::isfinite(out.v[k])) throw usage_error(field + ": non-finite entry");
  }
  return out;
}

Mat3<double> read_mat3(const json& j, const std::string& field) {
  Mat3<double> m;
  if (!j.is_array() || j.size() != 3) throw usage_error(field + ": expected a 3x3 array");
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_array() || j[i].size() != 3) throw usage_error(field + ": expected a 3x3 array");
    for (int k = 0; k < 3; ++k) {
      if (!j[i][k].is_number()) throw usage_error(field + ": non-numeric entry");
      m(i, k) = j[i][k].get<double>();
    }
  }
  return m;
}

struct Input {
  CurvatureJet<double> jet;
  json echo;
  std::optional<double> t;
  std::string label;
};

Input load_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw usage_error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  std::string text = ss.str();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw usage_error(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw usage_error("input must be a JSON object");
  Input in;
  in.label = path;
  in.echo = {{"file", path}, {"fnv1a64", fnv1a(text)}};
  bool has_r = j.contains("riemann"), has_b = j.contains("blocks");
  if (has_r == has_b) throw usage_error("input needs exactly one of \"riemann\" or \"blocks\"");
  if (has_r) {
    in.jet.R = read_tensor<4>(j["riemann"], "riemann");
  } else {
    const auto& b = j["blocks"];
    if (!b.is_object() || !b.contains("A") || !b.contains("B") || !b.contains("C"))
      throw usage_error("blocks: expected {\"A\", \"B\", \"C\"}");
    CurvatureBlocks<double> k{read_mat3(b["A"], "blocks.A"), read_mat3(b["B"], "blocks.B"), read_mat3(b["C"], "blocks.C")};
    in.jet.R = assemble_from_blocks(k);
  }
  if (j.contains("nabla_riemann")) in.jet.dR = read_tensor<5>(j["nabla_riemann"], "nabla_riemann");
  if (j.contains("second_contractions"))
    in.jet.d2 = SecondContractions<double>{read_tensor<4>(j["second_contractions"], "second_contractions")};
  if (j.contains("t")) {
    if (!j["t"].is_number()) throw usage_error("t: expected a number");
    in.t = j["t"].get<double>();
  }
  validate(in.jet);
  return in;
}

std::map<std::string, double> parse_params(const std::vector<std::string>& kv) {
  std::map<std::string, double> out;
  for (const auto& s : kv) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw usage_error("--param expects k=v, got " + s);
    std::string key = s.substr(0, eq), val = s.substr(eq + 1);
    try {
      std::size_t pos = 0;
      double x = std::stod(val, &pos);
      if (pos != val.size()) throw std::invalid_argument(val);
      out[key] = x;
    } catch (const std::exception&) {
      throw usage_error("--param " + key + ": not a number: " + val);
    }
  }
  return out;
}

double frob(const Mat3<double>& m) { return std::sqrt(norm2(m)); }

json acs_fragment(const CurvatureJet<double>& jet, double t, AcsSign s) {
  json a;
  a["sign"] = sign_name(s);
  a["nabla_j_norm2"] = nabla_j_norm2(jet, t, s);
  a["d_omega_norm2"] = kahler_differential(jet, t, s).norm2();
  a["nijenhuis_norm2"] = norm2(nijenhuis(jet, t, s).comps);
  if (s == AcsSign::plus) a["laplacian_max_abs"] = max_abs(laplacian_j(jet, t));
  return a;
}

json nij_fragment(const CurvatureJet<double>& jet, double t, AcsSign s) {
  json a;
  a["nijenhuis_max_abs"] = max_abs(nijenhuis(jet, t, s).comps);
  auto d = div_nijenhuis(jet, t, s);
  a["div1_max_abs"] = max_abs(d.div1);
  a["div2_max_abs"] = max_abs(d.div2);
  return a;
}

json analyze(const Input& in, double t, int frames, std::uint64_t seed) {
  const auto& jet = in.jet;
  json r;
  r["engine_version"] = kVersion;
  r["seed"] = seed;
  r["t"] = t;
  r["frames"] = frames;
  r["input"] = in.echo;

  auto k = block_decompose(jet.R);
  double S = scalar(jet.R);
  auto [wp, wm] = weyl_blocks(k, S);
  json base;
  base["scalar"] = S;
  base["ricci_eigenvalues"] = [&] {
    auto ric = ricci(jet.R);
    Eigen::Matrix4d m;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m(i, j) = ric(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(m, Eigen::EigenvaluesOnly);
    std::vector<double> ev(4);
    for (int i = 0; i < 4; ++i) ev[i] = es.eigenvalues()(i);
    return ev;
  }();
  base["w_plus_norm"] = frob(wp);
  base["w_minus_norm"] = frob(wm);
  r["base"] = base;

  auto tc = twistor_curvature(jet, t);
  json tw;
  tw["t"] = t;
  tw["sbar"] = tc.sbar;
  tw["ricbar_eigenvalues"] = detail::sorted_eigenvalues(tc.ricbar);
  tw["wbar_max_abs"] = max_abs(tc.wbar);
  tw["flags"] = tc.homogeneous_only ? std::vector<std::string>{"homogeneous-only"} : std::vector<std::string>{};
  tw["acs"] = {{"plus", acs_fragment(jet, t, AcsSign::plus)}, {"minus", acs_fragment(jet, t, AcsSign::minus)}};
  tw["nijenhuis"] = {{"plus", nij_fragment(jet, t, AcsSign::plus)}, {"minus", nij_fragment(jet, t, AcsSign::minus)}};
  auto J = j_matrix(AcsSign::plus);
  auto b = bochner_tensor<double, 6>(tc.rbar, tc.ricbar, tc.sbar, J, 3);
  tw["bochner"] = {{"bochner_max_abs", max_abs(b.b)},
                   {"rk_residual", rk_identity_residual(tc.rbar, J)},
                   {"kahler_identity_residual", kahler_identity_residual(tc.rbar, J)}};
  r["twistor"] = tw;

  ClassifyOptions co;
  co.frames = frames;
  co.seed = seed;
  json vs = json::array();
  for (const auto& v : classify_all(jet, t, co)) vs.push_back(report::verdict(v));
  r["verdicts"] = vs;
  return r;
}

std::string analysis_text(const json& r) {
  std::ostringstream o;
  auto num = [](const json& x) { return report::fmt_double(x.get<double>()); };
  o << "input: " << r["input"].dump() << "\n";
  o << "t: " << num(r["t"]) << "\n";
  o << "scalar: " << num(r["base"]["scalar"]) << "\n";
  o << "w_plus_norm: " << num(r["base"]["w_plus_norm"]) << "\n";
  o << "w_minus_norm: " << num(r["base"]["w_minus_norm"]) << "\n";
  o << "sbar: " << num(r["twistor"]["sbar"]) << "\n";
  o << "wbar_max_abs: " << num(r["twistor"]["wbar_max_abs"]) << "\n";
  for (const char* s : {"plus", "minus"}) {
    const auto& a = r["twistor"]["acs"][s];
    o << "nabla_j_norm2_" << s << ": " << num(a["nabla_j_norm2"]) << "\n";
    o << "d_omega_norm2_" << s << ": " << num(a["d_omega_norm2"]) << "\n";
    o << "nijenhuis_norm2_" << s << ": " << num(a["nijenhuis_norm2"]) << "\n";
  }
  o << "bochner_max_abs: " << num(r["twistor"]["bochner"]["bochner_max_abs"]) << "\n";
  for (const auto& v : r["verdicts"]) {
    o << (v["holds"].get<bool>() ? "HOLDS " : "FAILS ") << v["name"].get<std::string>()
      << " residual=" << num(v["residual"]);
    for (const auto& f : v["flags"]) o << " [" << f.get<std::string>() << "]";
    o << "\n";
  }
  return o.str();
}

const std::vector<std::string> kCsvColumns = {"input", "t", "scalar", "w_plus_norm", "w_minus_norm", "sbar",
                                              "wbar_max_abs", "nabla_j_norm2_plus", "nabla_j_norm2_minus",
                                              "d_omega_norm2_plus", "d_omega_norm2_minus", "nijenhuis_norm2_plus",
                                              "nijenhuis_norm2_minus", "bochner_max_abs"};

std::string analysis_csv(const json& r, const std::string& label) {
  std::ostringstream o;
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) o << (i ? "," : "") << kCsvColumns[i];
  o << "\n";
  auto num = [](const json& x) { return report::fmt_double(x.get<double>()); };
  const auto& tw = r["twistor"];
  std::string quoted = "\"";
  for (char c : label) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
  quoted += "\"";
  o << quoted << "," << num(r["t"]) << "," << num(r["base"]["scalar"]) << "," << num(r["base"]["w_plus_norm"]) << ","
    << num(r["base"]["w_minus_norm"]) << "," << num(tw["sbar"]) << "," << num(tw["wbar_max_abs"]) << ","
    << num(tw["acs"]["plus"]["nabla_j_norm2"]) << "," << num(tw["acs"]["minus"]["nabla_j_norm2"]) << ","
    << num(tw["acs"]["plus"]["d_omega_norm2"]) << "," << num(tw["acs"]["minus"]["d_omega_norm2"]) << ","
    << num(tw["acs"]["plus"]["nijenhuis_norm2"]) << "," << num(tw["acs"]["minus"]["nijenhuis_norm2"]) << ","
    << num(tw["bochner"]["bochner_max_abs"]) << "\n";
  return o.str();
}

std::vector<double> parse_t_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      double t = std::stod(item, &pos);
      if (pos != item.size() || !(t > 0) || !std::isfinite(t)) throw std::invalid_argument(item);
      out.push_back(t);
    } catch (const std::exception&) {
      throw usage_error("--t-list: not a positive number: " + item);
    }
  }
  if (out.empty()) throw usage_error("--t-list is empty");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Curvature of twistor spaces over four-manifolds at a point"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::string output = "json";
  auto* an = app.add_subcommand("analyze", "full report for one curvature jet");
  std::string model_name, input_path;
  std::vector<std::string> params;
  double t = 0;
  int frames = 64;
  std::optional<std::uint64_t> seed_flag;
  auto* o_model = an->add_option("--model", model_name, "built-in model name");
  auto* o_input = an->add_option("--input", input_path, "curvature JSON file");
  o_model->excludes(o_input);
  an->add_option("--param", params, "model parameter k=v (repeatable)")->needs(o_model);
  auto* o_t = an->add_option("--t", t, "fibre scale t > 0");
  an->add_option("--frames", frames, "Haar frames sampled per verdict")->check(CLI::NonNegativeNumber);
  an->add_option("--seed", seed_flag, "frame sampling seed (default $TWISTORLAB_SEED or 0)");
  an->add_option("--output", output, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));

  auto* ve = app.add_subcommand("verify", "run the identity, table and model suites");
  std::string suite = "all", t_list = "0.5,1,2";
  int samples = 500, jobs = 1;
  std::optional<std::uint64_t> vseed_flag;
  ve->add_option("--suite", suite, "all, identities, theorems or tables")
      ->check(CLI::IsMember({"all", "identities", "theorems", "tables"}));
  ve->add_option("--samples", samples, "random jets per t")->check(CLI::NonNegativeNumber);
  ve->add_option("--seed", vseed_flag, "suite seed (default $TWISTORLAB_SEED or 0)");
  ve->add_option("--t-list", t_list, "comma separated t values");
  ve->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  ve->add_option("--frames", frames, "Haar frames for the model suite")->check(CLI::NonNegativeNumber);
  ve->add_option("--output", output, "json or text")->check(CLI::IsMember({"json", "text"}));

  auto* ca = app.add_subcommand("catalog", "list built-in models");
  ca->add_option("--output", output, "json or text")->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*an) {
      if (o_model->count() == 0 && o_input->count() == 0) throw usage_error("analyze needs --model or --input");
      std::uint64_t seed = seed_flag ? *seed_flag : default_seed();
      Input in;
      if (o_model->count()) {
        if (o_t->count() == 0) throw usage_error("--t is required");
        auto m = model(model_name, parse_params(params), t);
        in.jet = m.jet;
        in.label = model_name;
        json p = json::object();
        for (const auto& [k, v] : m.params) p[k] = v;
        in.echo = {{"model", model_name}, {"params", p}};
      } else {
        in = load_file(input_path);
        if (o_t->count() == 0) {
          if (!in.t) throw usage_error("--t is required (or \"t\" in the input file)");
          t = *in.t;
        }
      }
      require_t(t);
      auto r = analyze(in, t, frames, seed);
      report::check_analysis(r);
      if (output == "json") std::cout << report::render(r);
      else if (output == "csv") std::cout << analysis_csv(r, in.label);
      else std::cout << analysis_text(r);
      return kOk;
    }

    if (*ve) {
      SuiteOptions so;
      so.seed = vseed_flag ? *vseed_flag : default_seed();
      so.samples = samples;
      so.t_list = parse_t_list(t_list);
      so.jobs = jobs;
      so.frames = frames;
      std::vector<Verdict> all;
      if (samples == 0) {
        std::cerr << "warning: --samples 0, nothing to verify\n";
      } else {
        if (suite == "all" || suite == "identities")
          for (auto& v : identity_suite(so)) all.push_back(v);
        if (suite == "all" || suite == "tables")
          for (auto& v : table_suite(so)) all.push_back(v);
        if (suite == "all" || suite == "theorems")
          for (auto& v : theorem_suite(so)) all.push_back(v);
      }
      int passed = 0;
      json checks = json::array();
      for (const auto& v : all) {
        passed += v.holds;
        checks.push_back(report::verdict(v));
      }
      bool ok = passed == static_cast<int>(all.size());
      json r;
      r["engine_version"] = kVersion;
      r["seed"] = so.seed;
      r["samples"] = samples;
      r["t_list"] = so.t_list;
      r["suite"] = suite;
      r["checks"] = checks;
      r["summary"] = {{"total", all.size()}, {"passed", passed}, {"failed", static_cast<int>(all.size()) - passed}};
      r["all_hold"] = ok;
      report::check_verify(r);
      if (output == "json") {
        std::cout << report::render(r);
      } else {
        for (const auto& v : all)
          std::printf("%s %-56s worst=%s tol=%s\n", v.holds ? "PASS" : "FAIL", v.name.c_str(),
                      report::fmt_double(v.residual).c_str(), report::fmt_double(v.tolerance).c_str());
        std::printf("%d/%zu checks hold\n", passed, all.size());
      }
      return ok ? kOk : kFailed;
    }

    if (*ca) {
      json r = json::array();
      for (const auto& m : list_models()) {
        json ps = json::array();
        for (const auto& p : m.params) ps.push_back({{"name", p.name}, {"default", p.default_value}, {"constraint", p.constraint}});
        r.push_back({{"name", m.name}, {"params", ps}, {"notes", m.notes}});
      }
      report::check_catalog(r);
      if (output == "json") {
        std::cout << report::render(r);
      } else {
        for (const auto& m : list_models()) {
          std::string ps;
          for (const auto& p : m.params) ps += (ps.empty() ? "" : " ") + p.name + "=" + report::fmt_double(p.default_value);
          std::printf("%s%s%s  # %s\n", m.name.c_str(), ps.empty() ? "" : " ", ps.c_str(), m.notes.c_str());
        }
      }
      return kOk;
    }
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const twistorlab::error& e) {
    std::cerr << "error: " << e.what() << " (residual " << report::fmt_double(e.residual) << ")\n";
    return kUsage;
  } catch (const report::schema_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
