#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "acs.hpp"
#include "bochner.hpp"
#include "catalog.hpp"
#include "classify.hpp"
#include "curvature4.hpp"
#include "frame_algebra.hpp"
#include "nijenhuis.hpp"
#include "twistor_tensors.hpp"

namespace twistorlab {

struct SuiteOptions {
  std::uint64_t seed = 0;
  int samples = 500;
  std::vector<double> t_list{0.5, 1.0, 2.0};
  int jobs = 1;
  int frames = 64;
};

namespace detail {

inline std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t sample_seed(std::uint64_t seed, int i) { return splitmix(seed ^ splitmix(static_cast<std::uint64_t>(i))); }

struct Check {
  std::string name;
  double tolerance;
  std::string ref;
};

// NaN compares false, so it always wins
inline void keep_worst(double& worst, double r) {
  if (!(r <= worst)) worst = r;
}

// runs f(i) for i in [0, n) on `jobs` threads; f returns one residual per check
inline std::vector<std::vector<double>> run_samples(int n, int jobs, const std::function<std::vector<double>(int)>& f) {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(n));
  jobs = std::max(1, std::min(jobs, n));
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < jobs; ++w)
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += jobs) out[i] = f(i);
    });
  for (auto& th : pool) th.join();
  return out;
}

inline std::vector<Verdict> merge(const std::vector<Check>& checks, const std::vector<std::vector<double>>& rows,
                                  int samples) {
  std::vector<Verdict> out;
  for (std::size_t c = 0; c < checks.size(); ++c) {
    double worst = 0;
    int at = -1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      double before = worst;
      keep_worst(worst, rows[i][c]);
      if (worst != before || (std::isnan(worst) && at < 0)) at = static_cast<int>(i);
    }
    auto v = make_verdict(checks[c].name, worst, checks[c].tolerance, checks[c].ref);
    v.details["samples"] = samples;
    if (at >= 0) v.details["worst_sample"] = at;
    if (!v.holds) v.witness = Rotation4{};
    out.push_back(v);
  }
  return out;
}

inline double rel(double a, double b, double scale) { return std::fabs(a - b) / (1 + std::fabs(scale)); }

inline std::vector<double> sorted_eigenvalues(const Mat6<double>& m) {
  Eigen::Matrix<double, 6, 6> e;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) e(i, j) = m(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, 6, 6>> es(e, Eigen::EigenvaluesOnly);
  std::vector<double> out(6);
  for (int i = 0; i < 6; ++i) out[i] = es.eigenvalues()(i);
  return out;
}

// keeps the fibre point: a₊ fixes the first self-dual axis, a₋ is arbitrary
inline Rotation4 fiber_stabilizer_rotation(const Rotation4& a) {
  auto pr = split_mu(a);
  double c = pr.plus(1, 1), s = pr.plus(2, 1), n = std::hypot(c, s);
  if (n < 1e-12) {
    c = 1;
    s = 0;
  } else {
    c /= n;
    s /= n;
  }
  Mat3<double> p;
  p(0, 0) = 1;
  p(1, 1) = p(2, 2) = c;
  p(2, 1) = s;
  p(1, 2) = -s;
  return compose_mu(RotationPair{p, pr.minus});
}

inline std::string t_label(double t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", t);
  return buf;
}

}  // namespace detail

inline std::vector<Verdict> identity_suite(const SuiteOptions& o) {
  using detail::Check;
  std::vector<Check> base_checks;
  for (AcsSign s : {AcsSign::plus, AcsSign::minus}) {
    std::string n = s == AcsSign::plus ? "plus" : "minus";
    base_checks.push_back({"norm_identity_" + n, 1e-10, "|∇J|² = |dω|²/3 + |N_J|²/8, relative to 1 + |∇J|²"});
    base_checks.push_back({"nijenhuis_tables_vs_generic_" + n, 1e-10, "Nijenhuis tables agree with the definition"});
    base_checks.push_back({"nabla_j_norm_closed_form_" + n, 1e-10, "|∇J|² closed form agrees with the component sum"});
    base_checks.push_back({"kahler_differential_tables_vs_generic_" + n, 1e-10, "dω tables agree with the cyclic sum of ∇ω"});
    base_checks.push_back({"nabla_j_compatibility_" + n, 1e-10, "∇J anticommutes with J"});
    base_checks.push_back({"div_nijenhuis_tables_vs_trace_" + n, 1e-10, "divergence tables agree with traces of ∇N"});
  }
  base_checks.push_back({"nijenhuis_norm_closed_form", 1e-10, "|N_J|² = 8t²(Γ² + (qt14+qt23+qq13+qq42)²)"});
  base_checks.push_back({"kahler_codifferential_tables_vs_generic", 1e-10, "δω table agrees with the trace of ∇ω"});
  base_checks.push_back({"laplacian_tables_vs_hessian", 1e-10, "Δ_J J table agrees with the trace of the Hessian"});
  base_checks.push_back({"laplacian_div_weyl_bridge", 1e-10, "Δ_J J (1,5) entry = 2t[(δW⁺)_213 − (δW⁺)_141]"});
  base_checks.push_back({"eells_salamon_lower_bound", 1e-12, "max|N of J⁻| ≥ 2/t, so J⁻ is never integrable"});
  base_checks.push_back({"block_transform_vs_rotation", 1e-10, "curvature blocks transform by the SO(3)×SO(3) pair"});
  base_checks.push_back({"frame_equivariance", 1e-9, "twistor invariants do not depend on the adapted frame"});

  std::vector<Check> checks;
  for (double t : o.t_list)
    for (const auto& c : base_checks) checks.push_back({c.name + "@t=" + detail::t_label(t), c.tolerance, c.ref});
  if (o.samples <= 0) return {};

  auto f = [&](int i) {
    std::uint64_t sd = detail::sample_seed(o.seed, i);
    auto jet = random_jet2(sd);
    auto rot = haar_random_rotation(sd, 1);
    auto rjet = rotate_jet(jet, detail::fiber_stabilizer_rotation(rot));
    std::vector<double> r;
    auto kb = block_decompose(jet.R);
    auto kt = transform_blocks(kb, split_mu(rot));
    auto kr = block_decompose(rotate_riemann(jet.R, rot));
    double block_res =
        std::fmax(max_abs_diff(kt.A, kr.A), std::fmax(max_abs_diff(kt.B, kr.B), max_abs_diff(kt.C, kr.C)));
    for (double t : o.t_list) {
      for (AcsSign s : {AcsSign::plus, AcsSign::minus}) {
        auto nj = nabla_j(jet, t, s);
        double n2 = norm2(nj.comps);
        auto nt = nijenhuis(jet, t, s, NijMethod::tables);
        auto ng = nijenhuis(jet, t, s, NijMethod::generic);
        auto dw = kahler_differential(jet, t, s);
        r.push_back(std::fabs(n2 - dw.norm2() / 3 - norm2(nt.comps) / 8) / (1 + n2));
        r.push_back(max_abs_diff(nt.comps, ng.comps));
        r.push_back(detail::rel(n2, nabla_j_norm2(jet, t, s, NormMethod::formula), n2));
        r.push_back(max_abs_diff(dw.full, kahler_differential_generic(nj)));
        r.push_back(nabla_j_compatibility_residual(nj));
        auto dv = div_nijenhuis(jet, t, s);
        auto tr = div_from_nabla(nabla_nijenhuis(jet, t, s));
        r.push_back(std::fmax(max_abs_diff(dv.div1, tr.div1), max_abs_diff(dv.div2, tr.div2)));
      }
      auto njp = nabla_j(jet, t, AcsSign::plus);
      double nn = norm2(nijenhuis(jet, t, AcsSign::plus).comps);
      r.push_back(detail::rel(nn, nijenhuis_norm2_closed(jet, t), nn));
      {
        auto a = kahler_codifferential(jet, t);
        auto b = kahler_codifferential_generic(njp);
        double m = 0;
        for (int k = 0; k < 6; ++k) m = std::fmax(m, std::fabs(a[k] - b[k]));
        r.push_back(m);
      }
      auto lap = laplacian_j(jet, t);
      r.push_back(max_abs_diff(lap, laplacian_j_generic(jet, t)));
      auto dwp = div_weyl_plus(jet);
      r.push_back(std::fabs(lap(0, 4) - 2 * t * (dwp(1, 0, 2) - dwp(0, 3, 0))));
      r.push_back(std::fmax(0.0, 2 / t - max_abs(nijenhuis(jet, t, AcsSign::minus).comps)));
      r.push_back(block_res);
      {
        auto a = twistor_curvature(jet, t), b = twistor_curvature(rjet, t);
        double m = detail::rel(a.sbar, b.sbar, a.sbar);
        auto ea = detail::sorted_eigenvalues(a.ricbar), eb = detail::sorted_eigenvalues(b.ricbar);
        for (int k = 0; k < 6; ++k) m = std::fmax(m, detail::rel(ea[k], eb[k], ea[k]));
        double wa = norm2(a.wbar), wb = norm2(b.wbar);
        m = std::fmax(m, detail::rel(wa, wb, wa));
        double ja = norm2(njp.comps), jb = nabla_j_norm2(rjet, t, AcsSign::plus);
        m = std::fmax(m, detail::rel(ja, jb, ja));
        double na = nn, nb = norm2(nijenhuis(rjet, t, AcsSign::plus).comps);
        m = std::fmax(m, detail::rel(na, nb, na));
        r.push_back(m);
      }
    }
    return r;
  };
  auto rows = detail::run_samples(o.samples, o.jobs, f);
  return detail::merge(checks, rows, o.samples);
}

inline std::vector<Verdict> table_suite(const SuiteOptions& o) {
  using detail::Check;
  std::vector<Check> base_checks = {
      {"rbar_curvature_symmetries", 1e-10, "assembled R̄ has Riemann symmetries and first Bianchi"},
      {"rbar_contraction_vs_ricci_table", 1e-10, "contraction of R̄ equals the Ric̄ table"},
      {"ricci_trace_vs_scalar_table", 1e-10, "trace of Ric̄ equals the S̄ table"},
      {"wbar_trace_free", 1e-10, "W̄ is trace-free"},
      {"wbar_vs_weyl_projection", 1e-10, "W̄ table equals the Weyl part of R̄"},
      {"table_overdetermination", 1e-10, "entries listed twice in the tables agree"},
      {"nabla_ricci_trace_vs_nabla_scalar", 1e-10, "trace of ∇Ric̄ equals ∇S̄"},
      {"ke_riemann_vs_twistor_riemann", 1e-12, "Kahler-Einstein R̄ table equals the general R̄"},
      {"bochner_ke_vs_general", 1e-12, "Kahler-Einstein Bochner tensor equals the general formula"},
      {"ke_nabla_riemann_ricci_contraction", 1e-10, "contraction of ∇R̄ vanishes on Kahler-Einstein data"},
      {"ke_kahler_identities", 1e-10, "R̄ is J-invariant and Ric̄ complex-linear on Kahler-Einstein data"},
  };
  std::vector<Check> checks;
  for (double t : o.t_list)
    for (const auto& c : base_checks) checks.push_back({c.name + "@t=" + detail::t_label(t), c.tolerance, c.ref});
  if (o.samples <= 0) return {};

  auto f = [&](int i) {
    std::uint64_t sd = detail::sample_seed(o.seed, i);
    auto jet = random_jet2(sd);
    std::vector<double> r;
    for (double t : o.t_list) {
      auto tc = twistor_curvature(jet, t);
      r.push_back(riemann_type_residual(tc.rbar));
      Mat6<double> c;
      for (int p = 0; p < 6; ++p)
        for (int q = 0; q < 6; ++q)
          for (int k = 0; k < 6; ++k) c(p, q) += tc.rbar(k, p, k, q);
      r.push_back(max_abs_diff(c, tc.ricbar));
      r.push_back(std::fabs(trace(tc.ricbar) - tc.sbar));
      r.push_back(trace_residual(tc.wbar));
      r.push_back(max_abs_diff(tc.wbar, weyl_part(tc.rbar)));
      r.push_back(tc.conflict);
      auto nr = twistor_nabla_ricci(jet, t);
      double m = 0;
      for (int s = 0; s < 6; ++s) {
        double x = 0;
        for (int p = 0; p < 6; ++p) x += nr.nabla_ricbar(p, p, s);
        m = std::fmax(m, std::fabs(x - nr.nabla_sbar[s]));
      }
      r.push_back(m);

      auto ke = random_jet(sd, CurvatureClass::einstein_self_dual, 12 / (t * t));
      auto rb = twistor_riemann(ke, t);
      r.push_back(max_abs_diff(ke_riemann(ke.R, t), rb));
      auto J = j_matrix(AcsSign::plus);
      auto general = bochner_tensor<double, 6>(rb, twistor_ricci(ke, t), twistor_scalar(ke, t), J, 3);
      r.push_back(max_abs_diff(bochner_ke(ke.R, t).b, general.b));
      auto dR = ke_nabla_riemann(ke, t);
      m = 0;
      for (int p = 0; p < 6; ++p)
        for (int q = 0; q < 6; ++q)
          for (int s = 0; s < 6; ++s) {
            double x = 0;
            for (int k = 0; k < 6; ++k) x += dR(k, p, k, q, s);
            m = std::fmax(m, std::fabs(x));
          }
      r.push_back(m);
      r.push_back(std::fmax(kahler_identity_residual(rb, J), ricci_complex_linear_residual(twistor_ricci(ke, t), J)));
    }
    return r;
  };
  auto rows = detail::run_samples(o.samples, o.jobs, f);
  return detail::merge(checks, rows, o.samples);
}

struct ModelCase {
  std::string label;
  std::string name;
  std::map<std::string, double> params;
};

// built-ins at their defaults plus the scalar-curvature cases the classification turns on
inline std::vector<ModelCase> theorem_cases(double t) {
  double k = 1 / (t * t);
  std::vector<ModelCase> out;
  for (const auto& m : list_models()) out.push_back({m.name, m.name, {}});
  out.push_back({"sphere(S=12/t^2)", "sphere", {{"k", k}}});
  out.push_back({"sphere(S=6/t^2)", "sphere", {{"k", k / 2}}});
  out.push_back({"sphere(S=9/t^2)", "sphere", {{"k", 0.75 * k}}});
  out.push_back({"cp2(S=12/t^2)", "cp2", {{"S", 12 * k}}});
  out.push_back({"einstein_selfdual(S=12/t^2)", "einstein_selfdual", {{"S", 12 * k}, {"c11", 6 * k}, {"c22", -2 * k}}});
  out.push_back({"einstein_selfdual(S=6/t^2)", "einstein_selfdual", {{"S", 6 * k}, {"c11", 2 * k}, {"c22", -k}}});
  out.push_back({"einstein_selfdual(S=0)", "einstein_selfdual", {{"S", 0}, {"c11", 1}, {"c22", -0.5}, {"c12", 0.25}}});
  return out;
}

inline std::vector<Verdict> theorem_suite(const SuiteOptions& o) {
  struct Job {
    ModelCase c;
    double t;
  };
  std::vector<Job> jobs;
  for (double t : o.t_list)
    for (auto& c : theorem_cases(t)) jobs.push_back({c, t});
  ClassifyOptions co;
  co.frames = o.frames;
  co.seed = o.seed;
  std::vector<Verdict> out(jobs.size());
  auto run = [&](int i) {
    const auto& jb = jobs[i];
    auto m = model(jb.c.name, jb.c.params, jb.t);
    auto got = classify_all(m.jet, jb.t, co);
    Verdict v;
    v.name = "model:" + jb.c.label + "@t=" + detail::t_label(jb.t);
    v.tolerance = 0.5;
    v.theorem_ref = "classifier verdicts match the expected classification of the model";
    double mismatches = 0;
    for (const auto& [name, want] : m.expected) {
      auto it = std::find_if(got.begin(), got.end(), [&](const Verdict& g) { return g.name == name; });
      bool ok = it != got.end() && it->holds == want;
      if (it != got.end())
        for (const auto& fl : it->flags)
          if (fl == "predicate-mismatch") ok = false;
      if (!ok) {
        mismatches += 1;
        v.flags.push_back("mismatch:" + name);
      }
      if (it != got.end()) v.details[name] = it->residual;
    }
    v.residual = mismatches;
    v.holds = mismatches < v.tolerance;
    v.frames_sampled = static_cast<int>(sample_frames(o.frames, o.seed).size());
    if (!v.holds) v.witness = Rotation4{};
    out[i] = v;
  };
  detail::run_samples(static_cast<int>(jobs.size()), o.jobs, [&](int i) {
    run(i);
    return std::vector<double>{};
  });
  return out;
}

}  // namespace twistorlab
