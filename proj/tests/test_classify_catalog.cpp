#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include <twistorlab/twistorlab.hpp>

using namespace twistorlab;

namespace {

const Verdict& find(const std::vector<Verdict>& vs, const std::string& name) {
  auto it = std::find_if(vs.begin(), vs.end(), [&](const Verdict& v) { return v.name == name; });
  if (it == vs.end()) throw std::runtime_error("no verdict " + name);
  return *it;
}

bool has_flag(const Verdict& v, const std::string& f) {
  return std::find(v.flags.begin(), v.flags.end(), f) != v.flags.end();
}

CurvatureJet<double> sphere_s(double S) { return model("sphere", {{"k", S / 12}}).jet; }

CurvatureJet<double> esd(double S, std::uint64_t seed = 0) {
  auto j = random_curvature(seed, CurvatureClass::einstein_self_dual, S);
  j.dR = DRiemann4<double>{};
  j.d2 = SecondContractions<double>{};
  return j;
}

CurvatureJet<double> diagonal(double a1, double a2, double a3) {
  CurvatureBlocks<double> k;
  k.A(0, 0) = k.C(0, 0) = a1;
  k.A(1, 1) = k.C(1, 1) = a2;
  k.A(2, 2) = k.C(2, 2) = a3;
  CurvatureJet<double> j;
  j.R = assemble_from_blocks(k);
  j.dR = DRiemann4<double>{};
  return j;
}

ClassifyOptions few_frames() {
  ClassifyOptions o;
  o.frames = 8;
  return o;
}

const double kTs[] = {0.5, 1.0, 2.0};

TEST(Normalize, UnitCurvatureAndScaleInvariant) {
  auto j = random_jet2(3);
  j.R = j.R * 7.0;
  auto n = normalize(j, 1.5);
  EXPECT_NEAR(max_abs(n.jet.R), 1.0, 1e-15);
  EXPECT_NEAR(scalar(n.jet.R) * n.t * n.t, scalar(j.R) * 1.5 * 1.5, 1e-10);
  auto f = normalize(model("flat").jet, 2.0);
  EXPECT_EQ(f.lambda, 1.0);
  EXPECT_EQ(f.t, 2.0);
  EXPECT_THROW(normalize(j, 0.0), parameter_error);
  j.R(0, 1, 2, 3) += 0.1;
  EXPECT_THROW(normalize(j, 1.0), invalid_curvature);
}

TEST(Frames, NestedPrefixesAndCount) {
  auto a = sample_frames(8, 3), b = sample_frames(64, 3);
  ASSERT_EQ(a.size(), 15u);
  ASSERT_EQ(b.size(), 71u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(max_abs_diff(a[i].m, b[i].m), 0.0);
  EXPECT_EQ(max_abs_diff(b[0].m, identity<double, 4>()), 0.0);
}

TEST(ClassifyBase, Models) {
  auto s = classify_base(model("sphere").jet);
  EXPECT_TRUE(find(s, "einstein").holds);
  EXPECT_TRUE(find(s, "self_dual").holds);
  EXPECT_TRUE(find(s, "constant_curvature").holds);
  EXPECT_FALSE(find(s, "ricci_flat").holds);
  EXPECT_TRUE(find(s, "ricci_flat").witness.has_value());
  for (const auto& v : classify_base(model("flat").jet)) EXPECT_TRUE(v.holds) << v.name;
  auto p = classify_base(model("s2xs2").jet);
  EXPECT_TRUE(find(p, "einstein").holds);
  EXPECT_FALSE(find(p, "self_dual").holds);
  EXPECT_FALSE(find(p, "constant_curvature").holds);
}

TEST(TwistorEinstein, ScalarCurvatureCases) {
  for (double t : kTs) {
    double k = 1 / (t * t);
    EXPECT_TRUE(classify_twistor_einstein(sphere_s(6 * k), t, few_frames()).holds);
    EXPECT_TRUE(classify_twistor_einstein(sphere_s(12 * k), t, few_frames()).holds);
    auto v = classify_twistor_einstein(sphere_s(9 * k), t, few_frames());
    EXPECT_FALSE(v.holds);
    EXPECT_GT(v.residual, 1e-3);
    EXPECT_TRUE(v.witness.has_value());
    EXPECT_TRUE(has_flag(v, "predicate:fails"));
    EXPECT_FALSE(has_flag(v, "predicate-mismatch"));
  }
  auto ric = twistor_ricci(sphere_s(6), 1.0);
  EXPECT_NEAR(ric(4, 4), 1.25, 1e-12);
  EXPECT_NEAR(twistor_scalar(sphere_s(6), 1.0) / 6, 1.25, 1e-12);
}

TEST(KahlerEinstein, Cases) {
  for (double t : kTs) {
    double k = 1 / (t * t);
    auto ke = classify_kahler_einstein(sphere_s(12 * k), t, few_frames());
    EXPECT_TRUE(ke.holds);
    EXPECT_FALSE(ke.witness.has_value());
    auto half = classify_kahler_einstein(esd(6 * k), t, few_frames());
    EXPECT_FALSE(half.holds);
    EXPECT_GE(half.details.at("nabla_j_max_abs"), 1 / (2 * t) - 1e-12);
    EXPECT_FALSE(classify_kahler_einstein(model("flat").jet, t, few_frames()).holds);
  }
}

TEST(Bochner, Cases) {
  for (double t : kTs) {
    double k = 1 / (t * t);
    EXPECT_TRUE(classify_bochner(sphere_s(12 * k), t, BochnerVariant::flat, few_frames()).holds);
    EXPECT_TRUE(classify_bochner(sphere_s(12 * k), t, BochnerVariant::parallel, few_frames()).holds);
    auto cp = model("cp2", {{"S", 12 * k}}).jet;
    EXPECT_FALSE(classify_bochner(cp, t, BochnerVariant::flat, few_frames()).holds);
    EXPECT_FALSE(classify_bochner(cp, t, BochnerVariant::parallel, few_frames()).holds);
    auto f = classify_bochner(model("flat").jet, t, BochnerVariant::flat, few_frames());
    EXPECT_FALSE(f.holds);
    EXPECT_GE(f.residual, 3 / (10 * t * t) - 1e-12);
    auto out = classify_bochner(model("s2xs2").jet, t, BochnerVariant::parallel, few_frames());
    EXPECT_FALSE(out.holds);
    EXPECT_TRUE(has_flag(out, "out-of-theorem-scope"));
  }
}

TEST(HarmonicJ, SelfDualHoldsGenericFails) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    auto v = classify_harmonic_j(random_jet(s, CurvatureClass::self_dual), 1.0);
    EXPECT_TRUE(v.holds) << v.residual;
    EXPECT_EQ(v.frames_sampled, 71);
  }
  auto d = classify_harmonic_j(diagonal(1, 2, 3), 1.0);
  EXPECT_FALSE(d.holds);
  EXPECT_TRUE(d.witness.has_value());
  EXPECT_GT(d.residual, 1e-4);
  EXPECT_TRUE(classify_harmonic_j(model("flat").jet, 1.0).holds);
  EXPECT_TRUE(has_flag(classify_harmonic_j(random_curvature(1), 1.0, few_frames()), "homogeneous-only"));
}

TEST(HarmonicJ, MoreFramesNeverLowerTheResidual) {
  auto j = random_jet1(4);
  ClassifyOptions a, b;
  a.frames = 8;
  b.frames = 32;
  EXPECT_LE(classify_harmonic_j(j, 1.0, a).residual, classify_harmonic_j(j, 1.0, b).residual);
}

TEST(DivNijenhuis, Cases) {
  EXPECT_TRUE(classify_div_nijenhuis(random_jet(2, CurvatureClass::self_dual), 1.0, few_frames()).holds);
  auto d = classify_div_nijenhuis(diagonal(1, 2, 3), 1.0, few_frames());
  EXPECT_FALSE(d.holds);
  EXPECT_GT(d.details.at("div2_residual"), 1e-4);
  EXPECT_TRUE(classify_div_nijenhuis(model("flat").jet, 1.0, few_frames()).holds);
}

TEST(LcfObstruction, AlwaysHolds) {
  for (const auto& m : list_models())
    for (double t : kTs) {
      auto v = classify_lcf_obstruction(model(m.name).jet, t, few_frames());
      EXPECT_TRUE(v.holds) << m.name;
      EXPECT_EQ(v.comparison, ">");
    }
  for (double t : kTs) {
    auto f = classify_lcf_obstruction(model("flat").jet, t, few_frames());
    EXPECT_GE(f.residual, 3 / (5 * t * t) - 1e-12);
  }
}

TEST(LcfObstruction, DiagonalFrameCase) {
  for (double t : kTs) {
    double k = 1 / (t * t);
    auto v = classify_lcf_obstruction(diagonal(-2 * k, 2 * k, -2 * k), t, few_frames());
    EXPECT_TRUE(v.holds);
    EXPECT_NEAR(v.details.at("diagonal_frame_equation"), 0.0, 1e-12);
    EXPECT_LT(v.details.at("diagonal_frame_offdiag"), 1e-12);
  }
}

TEST(RicciParallel, EinsteinSelfDualScalars) {
  for (double S : {0.0, 6.0, 12.0}) {
    auto v = classify_ricci_parallel(esd(S, 1), 1.0, few_frames());
    EXPECT_TRUE(v.holds) << S;
    EXPECT_FALSE(has_flag(v, "predicate-mismatch"));
  }
  auto v = classify_ricci_parallel(esd(9.0, 1), 1.0, few_frames());
  EXPECT_FALSE(v.holds);
  EXPECT_GT(v.residual, 1e-4);
  EXPECT_TRUE(has_flag(v, "sub:twistor_einstein=fails"));
  EXPECT_TRUE(has_flag(classify_ricci_parallel(model("s2xs2").jet, 1.0, few_frames()), "out-of-theorem-scope"));
}

TEST(LocallySymmetric, Cases) {
  EXPECT_TRUE(classify_locally_symmetric(model("flat").jet, 1.0, few_frames()).holds);
  auto s = classify_locally_symmetric(sphere_s(12), 1.0, few_frames());
  EXPECT_TRUE(s.holds);
  EXPECT_TRUE(has_flag(s, "kahler-einstein:full-nabla-riemann-checked"));
  auto cp = classify_locally_symmetric(model("cp2", {{"S", 12}}).jet, 1.0, few_frames());
  EXPECT_FALSE(cp.holds);
  EXPECT_FALSE(classify_locally_symmetric(sphere_s(6), 1.0, few_frames()).holds);
}

TEST(ClassifyAll, OrderAndDeterminism) {
  auto j = random_jet2(5);
  auto a = classify_all(j, 1.0, few_frames()), b = classify_all(j, 1.0, few_frames());
  std::vector<std::string> names = {"einstein",        "self_dual",        "ricci_flat",       "constant_curvature",
                                    "twistor_einstein", "kahler_einstein",  "bochner_flat",     "bochner_parallel",
                                    "harmonic_j",      "div_nijenhuis",    "lcf_obstruction",  "ricci_parallel",
                                    "locally_symmetric"};
  ASSERT_EQ(a.size(), names.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].name, names[i]);
    EXPECT_EQ(a[i].residual, b[i].residual);
    EXPECT_EQ(a[i].holds, b[i].holds);
    EXPECT_FALSE(a[i].theorem_ref.empty());
  }
  EXPECT_THROW(classify_all(j, -1.0), parameter_error);
}

TEST(Catalog, Registry) {
  auto ms = list_models();
  ASSERT_EQ(ms.size(), 7u);
  std::set<std::string> names;
  for (const auto& m : ms) names.insert(m.name);
  EXPECT_TRUE(names.count("sphere"));
  EXPECT_EQ(names.size(), 7u);
  for (const auto& m : ms)
    if (m.name == "cp2") {
      ASSERT_EQ(m.params.size(), 1u);
      EXPECT_EQ(m.params[0].name, "S");
      EXPECT_EQ(m.params[0].constraint, "S > 0");
    }
  auto again = list_models();
  for (std::size_t i = 0; i < ms.size(); ++i) EXPECT_EQ(ms[i].name, again[i].name);
}

TEST(Catalog, Errors) {
  EXPECT_THROW(model("torus"), unknown_model);
  EXPECT_THROW(model("sphere", {{"S", 1}}), parameter_error);
  EXPECT_THROW(model("sphere", {{"k", 0}}), parameter_error);
  EXPECT_THROW(model("hyperbolic", {{"k", 1}}), parameter_error);
  EXPECT_THROW(model("cp2", {{"S", 0}}), parameter_error);
  EXPECT_THROW(model("cp2", {{"S", -3}}), parameter_error);
  EXPECT_THROW(model("generic", {{"seed", -1}}), parameter_error);
  EXPECT_THROW(model("generic", {{"seed", 1.5}}), parameter_error);
  EXPECT_THROW(model("sphere", {{"k", std::nan("")}}), parameter_error);
  EXPECT_THROW(model("sphere", {}, 0.0), parameter_error);
}

TEST(Catalog, ModelsAreValidWithZeroDerivatives) {
  for (const auto& m : list_models()) {
    auto s = model(m.name);
    EXPECT_NO_THROW(validate(s.jet));
    ASSERT_TRUE(s.jet.dR.has_value());
    ASSERT_TRUE(s.jet.d2.has_value());
    EXPECT_EQ(max_abs(*s.jet.dR), 0.0);
    EXPECT_EQ(s.params.size(), m.params.size());
  }
}

TEST(Catalog, EinsteinSelfDualWithScalarCIsTheSphere) {
  for (double S : {12.0, 3.0, -6.0}) {
    auto e = model("einstein_selfdual", {{"S", S}, {"c11", S / 12}, {"c22", S / 12}}).jet;
    EXPECT_LT(max_abs_diff(e.R, sphere_s(S).R), 1e-15);
  }
}

TEST(Catalog, ExpectedVerdictsMatchClassifiers) {
  for (double t : kTs)
    for (const auto& c : theorem_cases(t)) {
      auto m = model(c.name, c.params, t);
      auto got = classify_all(m.jet, t, few_frames());
      for (const auto& [name, want] : m.expected) {
        const auto& v = find(got, name);
        EXPECT_EQ(v.holds, want) << c.label << " t=" << t << " " << name << " residual " << v.residual;
        EXPECT_FALSE(has_flag(v, "predicate-mismatch")) << c.label << " " << name;
      }
    }
}

TEST(Catalog, SphereAtKahlerEinsteinScaleExpectations) {
  for (double t : kTs) {
    auto m = model("sphere", {{"k", 1 / (t * t)}}, t);
    EXPECT_NEAR(scalar(m.jet.R), 12 / (t * t), 1e-12);
    std::map<std::string, bool> e(m.expected.begin(), m.expected.end());
    EXPECT_TRUE(e.at("kahler_einstein"));
    EXPECT_TRUE(e.at("bochner_flat"));
  }
}

TEST(Suites, SmallRunsHoldAndRepeat) {
  SuiteOptions o;
  o.seed = 3;
  o.samples = 10;
  auto a = table_suite(o), b = table_suite(o);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_TRUE(a[i].holds) << a[i].name << " " << a[i].residual;
    EXPECT_EQ(a[i].residual, b[i].residual);
  }
  auto id = identity_suite(o);
  for (const auto& v : id)
    if (v.name.rfind("norm_identity_minus", 0) != 0) {
      EXPECT_TRUE(v.holds) << v.name << " " << v.residual;
    }
  o.jobs = 3;
  auto id3 = identity_suite(o);
  ASSERT_EQ(id.size(), id3.size());
  for (std::size_t i = 0; i < id.size(); ++i) EXPECT_EQ(id[i].residual, id3[i].residual) << id[i].name;
}

TEST(Suites, NoSamplesMeansNoChecks) {
  SuiteOptions o;
  o.samples = 0;
  EXPECT_TRUE(identity_suite(o).empty());
  EXPECT_TRUE(table_suite(o).empty());
}

}  // namespace
