#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "acs.hpp"
#include "bochner.hpp"
#include "curvature4.hpp"
#include "frame_algebra.hpp"
#include "nijenhuis.hpp"
#include "twistor_tensors.hpp"

namespace twistorlab {

struct Verdict {
  std::string name;
  bool holds = false;
  double residual = 0;
  double tolerance = 0;
  // "<": holds iff residual < tolerance; ">": holds iff residual > tolerance
  std::string comparison = "<";
  int frames_sampled = 1;
  std::optional<Rotation4> witness;
  std::vector<std::string> flags;
  std::string theorem_ref;
  std::map<std::string, double> details;
};

struct ClassifyOptions {
  int frames = 64;
  std::uint64_t seed = 0;
  double zero_tol = 1e-9;
  double nonzero_tol = 1e-4;
};

struct Normalized {
  CurvatureJet<double> jet;
  double t = 1;
  double lambda = 1;
};

// homothety to max|R| = 1: R ↦ λR, ∇R ↦ λ^{3/2}∇R, ∇²R ↦ λ²∇²R, t ↦ t/√λ
inline Normalized normalize(const CurvatureJet<double>& jet, double t) {
  require_t(t);
  validate(jet);
  double m = max_abs(jet.R);
  double lam = m > 0 ? 1 / m : 1;
  Normalized n;
  n.lambda = lam;
  n.t = t / std::sqrt(lam);
  n.jet.R = jet.R * lam;
  if (jet.dR) n.jet.dR = *jet.dR * std::pow(lam, 1.5);
  if (jet.d2) n.jet.d2 = SecondContractions<double>{jet.d2->K * (lam * lam)};
  return n;
}

// identity, the structured rotations, then n Haar draws; prefixes are nested in n
inline std::vector<Rotation4> sample_frames(int n, std::uint64_t seed) {
  std::vector<Rotation4> f{Rotation4{}};
  for (const auto& r : structured_rotations()) f.push_back(r);
  for (int i = 0; i < n; ++i) f.push_back(haar_random_rotation(seed, static_cast<std::uint64_t>(i)));
  return f;
}

namespace detail {

struct Scan {
  double value = 0;
  int index = 0;
};

template <class F>
Scan scan_frames(const CurvatureJet<double>& jet, const std::vector<Rotation4>& frames, F&& f, bool take_min = false) {
  Scan s;
  s.value = take_min ? std::numeric_limits<double>::infinity() : -1;
  for (int i = 0; i < static_cast<int>(frames.size()); ++i) {
    double v = f(i == 0 ? jet : rotate_jet(jet, frames[i]));
    if (take_min ? v < s.value : v > s.value) {
      s.value = v;
      s.index = i;
    }
  }
  return s;
}

inline Verdict make_verdict(const std::string& name, double residual, double tol, const std::string& ref,
                            const std::string& cmp = "<") {
  Verdict v;
  v.name = name;
  v.residual = residual;
  v.tolerance = tol;
  v.comparison = cmp;
  v.holds = cmp == "<" ? residual < tol : residual > tol;
  v.theorem_ref = ref;
  return v;
}

inline void attach_scan(Verdict& v, const Scan& s, const std::vector<Rotation4>& frames) {
  v.frames_sampled = static_cast<int>(frames.size());
  if (!v.holds) v.witness = frames[s.index];
}

inline void attach_predicate(Verdict& v, bool predicate) {
  v.flags.push_back(std::string("predicate:") + (predicate ? "holds" : "fails"));
  if (predicate != v.holds) v.flags.push_back("predicate-mismatch");
}

inline bool scalar_is(double S, double t, double target) {
  double x = S * t * t;
  return std::fabs(x - target) <= 1e-8 * std::fmax(1.0, std::fabs(target));
}

struct BaseFacts {
  double S = 0;
  double einstein = 0, self_dual = 0, ricci_flat = 0, constant_curvature = 0;
};

inline BaseFacts base_facts(const CurvatureJet<double>& jet) {
  BaseFacts b;
  auto k = block_decompose(jet.R);
  b.S = scalar(jet.R);
  b.einstein = einstein_residual(k);
  b.self_dual = self_dual_residual(k);
  b.ricci_flat = max_abs(ricci(jet.R));
  Riemann4<double> c;
  for (int a = 0; a < 4; ++a)
    for (int bb = 0; bb < 4; ++bb)
      for (int cc = 0; cc < 4; ++cc)
        for (int d = 0; d < 4; ++d) c(a, bb, cc, d) = b.S / 12 * ((a == cc) * (bb == d) - (a == d) * (bb == cc));
  b.constant_curvature = max_abs_diff(jet.R, c);
  return b;
}

inline bool has_zero_dr(const CurvatureJet<double>& jet, double tol) { return !jet.dR || max_abs(*jet.dR) < tol; }

inline void flag_missing_jets(Verdict& v, const CurvatureJet<double>& jet, bool needs_d2) {
  if (!jet.dR || (needs_d2 && !jet.d2)) v.flags.push_back("homogeneous-only");
}

inline double twistor_einstein_residual(const CurvatureJet<double>& j, double t) {
  auto ric = twistor_ricci(j, t);
  double s = twistor_scalar(j, t);
  return max_abs_diff(ric, identity<double, 6>() * (s / 6));
}

}  // namespace detail

inline std::vector<Verdict> classify_base(const CurvatureJet<double>& jet, const ClassifyOptions& o = {}) {
  auto n = normalize(jet, 1.0);
  auto b = detail::base_facts(n.jet);
  std::vector<Verdict> out;
  out.push_back(detail::make_verdict("einstein", b.einstein, o.zero_tol, "Einstein iff the mixed block B vanishes"));
  out.push_back(detail::make_verdict("self_dual", b.self_dual, o.zero_tol, "self-dual iff A is a multiple of the identity"));
  out.push_back(detail::make_verdict("ricci_flat", b.ricci_flat, o.zero_tol, "Ricci tensor vanishes"));
  out.push_back(detail::make_verdict("constant_curvature", b.constant_curvature, o.zero_tol,
                                     "R = (S/12)(g∧g)/2, i.e. locally a space form"));
  for (auto& v : out)
    if (!v.holds) v.witness = Rotation4{};
  return out;
}

inline Verdict classify_twistor_einstein(const CurvatureJet<double>& jet, double t, const ClassifyOptions& o = {}) {
  auto n = normalize(jet, t);
  auto frames = sample_frames(o.frames, o.seed);
  auto s = detail::scan_frames(n.jet, frames, [&](const CurvatureJet<double>& j) {
    return detail::twistor_einstein_residual(j, n.t);
  });
  auto v = detail::make_verdict("twistor_einstein", s.value, o.zero_tol,
                                "(Z,g_t) Einstein iff M Einstein, self-dual with S in {6/t^2, 12/t^2}");
  detail::attach_scan(v, s, frames);
  auto b = detail::base_facts(n.jet);
  bool pred = b.einstein < o.zero_tol && b.self_dual < o.zero_tol &&
              (detail::scalar_is(b.S, n.t, 6) || detail::scalar_is(b.S, n.t, 12));
  detail::attach_predicate(v, pred);
  return v;
}

inline Verdict classify_kahler_einstein(const CurvatureJet<double>& jet, double t, const ClassifyOptions& o = {}) {
  auto n = normalize(jet, t);
  auto frames = sample_frames(o.frames, o.seed);
  double worst_nj = 0;
  auto s = detail::scan_frames(n.jet, frames, [&](const CurvatureJet<double>& j) {
    double nj = max_abs(nabla_j(j, n.t, AcsSign::plus).comps);
    worst_nj = std::fmax(worst_nj, nj);
    return std::fmax(detail::twistor_einstein_residual(j, n.t), nj);
  });
  auto v = detail::make_verdict("kahler_einstein", s.value, o.zero_tol,
                                "(Z,g_t,J) Kahler-Einstein iff M Einstein, self-dual with S = 12/t^2");
  detail::attach_scan(v, s, frames);
  v.details["nabla_j_max_abs"] = worst_nj / std::sqrt(n.lambda);
  auto b = detail::base_facts(n.jet);
  detail::attach_predicate(v, b.einstein < o.zero_tol && b.self_dual < o.zero_tol && detail::scalar_is(b.S, n.t, 12));
  return v;
}

enum class BochnerVariant { flat, parallel };

inline Verdict classify_bochner(const CurvatureJet<double>& jet, double t, BochnerVariant variant,
                                const ClassifyOptions& o = {}) {
  auto n = normalize(jet, t);
  auto frames = sample_frames(o.frames, o.seed);
  auto b = detail::base_facts(n.jet);
  bool pred = b.constant_curvature < o.zero_tol && detail::scalar_is(b.S, n.t, 12);
  Verdict v;
  if (variant == BochnerVariant::flat) {
    auto J = j_matrix(AcsSign::plus);
    auto s = detail::scan_frames(n.jet, frames, [&](const CurvatureJet<double>& j) {
      auto tc = twistor_curvature(j, n.t);
      return max_abs(bochner_tensor<double, 6>(tc.rbar, tc.ricbar, tc.sbar, J, 3).b);
    });
    v = detail::make_verdict("bochner_flat", s.value, o.zero_tol, "(Z,g_t,J) Bochner-flat iff M is S^4 with S = 12/t^2");
    detail::attach_scan(v, s, frames);
  } else {
    try {
      auto s = detail::scan_frames(n.jet, frames, [&](const CurvatureJet<double>& j) {
        return max_abs(nabla_bochner_ke(j, n.t));
      });
      v = detail::make_verdict("bochner_parallel", s.value, o.zero_tol,
                               "(Z,g_t,J) Bochner-parallel iff M is S^4 with S = 12/t^2");
      detail::attach_scan(v, s, frames);
    } catch (const hypothesis_violated& e) {
      v = detail::make_verdict("bochner_parallel", std::fmax(e.residual, o.zero_tol), o.zero_tol,
                               "(Z,g_t,J) Bochner-parallel iff M is S^4 with S = 12/t^2");
      v.holds = false;
      v.witness = Rotation4{};
      v.flags.push_back("out-of-theorem-scope");
    }
  }
  detail::attach_predicate(v, pred);
  return v;
}

inline Verdict classify_harmonic_j(const CurvatureJet<double>& jet, double t, const ClassifyOptions& o = {}) {
  auto n = normalize(jet, t);
  auto frames = sample_frames(o.frames, o.seed);
  auto s = detail::scan_frames(n.jet, frames, [&](const CurvatureJet<double>& j) {
    return max_abs(laplacian_j(j, n.t));
  });
  auto v = detail::make_verdict("harmonic_j", s.value, o.zero_tol, "J harmonic iff M self-dual");
  detail::attach_scan(v, s, frames);
  detail::flag_missing_jets(v, jet, false);
  detail::attach_predicate(v, detail::base_facts(n.jet).self_dual < o.zero_tol);
  return v;
}

inline Verdict classify_div_nijenhuis(const CurvatureJet<double>& jet, double t, const ClassifyOptions& o = {}) {
  auto n = normalize(jet, t);
  auto frames = sample_frames(o.frames, o.seed);
  double w1 = 0, w2 = 0;
  auto s = detail::scan_frames(n.jet, frames, [&](const CurvatureJet<double>& j) {
    auto d = div_nijenhuis(j, n.t, AcsSign::plus);
    double a = max_abs(d.div1), b = max_abs(d.div2);
    w1 = std::fmax(w1, a);
    w2 = std::fmax(w2, b);
    return std::fmax(a, b);
  });
  auto v = detail::make_verdict("div_nijenhuis", s.value, o.zero_tol,
                                "M self-dual iff div N_J = 0, equivalently iff the second divergence of N_J = 0");
  detail::attach_scan(v, s, frames);
  v.details["div1_residual"] = w1;
  v.details["div2_residual"] = w2;
  detail::flag_missing_jets(v, jet, false);
  detail::attach_predicate(v, detail::base_facts(n.jet).self_dual < o.zero_tol);
  return v;
}

inline Verdict classify_lcf_obstruction(const CurvatureJet<double>& jet, double t, const ClassifyOptions& o = {}) {
  auto n = normalize(jet, t);
  auto frames = sample_frames(o.frames, o.seed);
  auto s = detail::scan_frames(
      n.jet, frames, [&](const CurvatureJet<double>& j) { return max_abs(twistor_weyl(j, n.t)); }, true);
  auto v = detail::make_verdict("lcf_obstruction", s.value, o.nonzero_tol,
                                "(Z,g_t) is never locally conformally flat", ">");
  detail::attach_scan(v, s, frames);
  if (s.value < o.zero_tol) v.flags.push_back("conformally-flat-frame-found");
  // frame with A diagonal: 2A11 + t²(A23² − A22 A33)
  auto k = block_decompose(n.jet.R);
  Eigen::Matrix3d A;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) A(i, j) = k.A(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(A);
  Eigen::Matrix3d V = es.eigenvectors();
  if (V.determinant() < 0) V.col(0) *= -1;
  Mat3<double> vp;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) vp(i, j) = V(i, j);
  auto a = compose_mu(RotationPair{vp, identity<double, 3>()});
  auto kd = block_decompose(rotate_riemann(n.jet.R, a));
  double tt = n.t * n.t;
  v.details["diagonal_frame_equation"] =
      2 * kd.A(0, 0) + tt * (kd.A(1, 2) * kd.A(1, 2) - kd.A(1, 1) * kd.A(2, 2));
  v.details["diagonal_frame_offdiag"] = std::fmax(std::fabs(kd.A(0, 1)), std::fmax(std::fabs(kd.A(0, 2)), std::fabs(kd.A(1, 2))));
  detail::attach_predicate(v, true);
  return v;
}

inline Verdict classify_ricci_parallel(const CurvatureJet<double>& jet, double t, const ClassifyOptions& o = {}) {
  auto n = normalize(jet, t);
  auto frames = sample_frames(o.frames, o.seed);
  auto s = detail::scan_frames(n.jet, frames, [&](const CurvatureJet<double>& j) {
    return max_abs(twistor_nabla_ricci(j, n.t).nabla_ricbar);
  });
  auto v = detail::make_verdict("ricci_parallel", s.value, o.zero_tol,
                                "for self-dual M: (Z,g_t) Ricci parallel iff (Z,g_t) Einstein or M Ricci-flat");
  detail::attach_scan(v, s, frames);
  detail::flag_missing_jets(v, jet, true);
  auto b = detail::base_facts(n.jet);
  if (!(b.self_dual < o.zero_tol)) v.flags.push_back("out-of-theorem-scope");
  bool ein = b.einstein < o.zero_tol && b.self_dual < o.zero_tol &&
             (detail::scalar_is(b.S, n.t, 6) || detail::scalar_is(b.S, n.t, 12));
  bool rf = b.ricci_flat < o.zero_tol;
  v.flags.push_back(std::string("sub:twistor_einstein=") + (ein ? "holds" : "fails"));
  v.flags.push_back(std::string("sub:base_ricci_flat=") + (rf ? "holds" : "fails"));
  detail::attach_predicate(v, ein || rf);
  return v;
}

inline Verdict classify_locally_symmetric(const CurvatureJet<double>& jet, double t, const ClassifyOptions& o = {}) {
  auto n = normalize(jet, t);
  auto frames = sample_frames(o.frames, o.seed);
  auto b = detail::base_facts(n.jet);
  double S = b.S, tt = n.t * n.t;
  double poly = n.t * tt * S / 6912 * (S - 12 / tt) * (S - 24 / tt);
  bool ke = b.einstein < o.zero_tol && b.self_dual < o.zero_tol && detail::scalar_is(S, n.t, 12);
  auto s = detail::scan_frames(n.jet, frames, [&](const CurvatureJet<double>& j) {
    double r = max_abs(twistor_nabla_ricci(j, n.t).nabla_ricbar);
    if (ke) r = std::fmax(r, max_abs(ke_nabla_riemann(j, n.t)));
    return r;
  });
  auto v = detail::make_verdict("locally_symmetric", std::fmax(s.value, std::fabs(poly)), o.zero_tol,
                                "for self-dual M: (Z,g_t) locally symmetric iff M is S^4 with S = 12/t^2 or M is "
                                "Ricci-flat and locally symmetric");
  detail::attach_scan(v, s, frames);
  v.details["spot_polynomial"] = poly;
  if (ke) v.flags.push_back("kahler-einstein:full-nabla-riemann-checked");
  else v.flags.push_back("necessary-conditions-only");
  detail::flag_missing_jets(v, jet, true);
  if (!(b.self_dual < o.zero_tol)) v.flags.push_back("out-of-theorem-scope");
  bool pred = (b.constant_curvature < o.zero_tol && detail::scalar_is(S, n.t, 12)) ||
              (b.ricci_flat < o.zero_tol && detail::has_zero_dr(n.jet, o.zero_tol));
  detail::attach_predicate(v, pred);
  return v;
}

// every classifier, base first
inline std::vector<Verdict> classify_all(const CurvatureJet<double>& jet, double t, const ClassifyOptions& o = {}) {
  auto out = classify_base(jet, o);
  out.push_back(classify_twistor_einstein(jet, t, o));
  out.push_back(classify_kahler_einstein(jet, t, o));
  out.push_back(classify_bochner(jet, t, BochnerVariant::flat, o));
  out.push_back(classify_bochner(jet, t, BochnerVariant::parallel, o));
  out.push_back(classify_harmonic_j(jet, t, o));
  out.push_back(classify_div_nijenhuis(jet, t, o));
  out.push_back(classify_lcf_obstruction(jet, t, o));
  out.push_back(classify_ricci_parallel(jet, t, o));
  out.push_back(classify_locally_symmetric(jet, t, o));
  return out;
}

}  // namespace twistorlab
