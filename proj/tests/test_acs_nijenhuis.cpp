#include <gtest/gtest.h>

#include <cmath>

#include <twistorlab/twistorlab.hpp>

using namespace twistorlab;

namespace {

CurvatureJet<double> esd(double S, std::uint64_t seed = 0) {
  auto j = random_curvature(seed, CurvatureClass::einstein_self_dual, S);
  j.dR = DRiemann4<double>{};
  j.d2 = SecondContractions<double>{};
  return j;
}

CurvatureJet<double> flat() {
  CurvatureJet<double> j;
  j.dR = DRiemann4<double>{};
  j.d2 = SecondContractions<double>{};
  return j;
}

// A diagonal, B = 0, C = A, zero derivatives
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

// self-dual curvature whose derivative is self-dual as well
CurvatureJet<double> self_dual_jet(std::uint64_t seed) { return random_jet(seed, CurvatureClass::self_dual); }

const double kTs[] = {0.5, 1.0, 2.0};
const AcsSign kSigns[] = {AcsSign::plus, AcsSign::minus};

TEST(JMatrix, SquaresToMinusIdentityAndSignsDifferOnFibre) {
  for (AcsSign s : kSigns) {
    auto J = j_matrix(s);
    EXPECT_EQ(max_abs_diff(matmul(J, J), identity<double, 6>() * -1.0), 0.0);
    EXPECT_EQ(J(1, 0), 1.0);
  }
  auto p = j_matrix(AcsSign::plus), m = j_matrix(AcsSign::minus);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) EXPECT_EQ(p(a, b), m(a, b));
  EXPECT_EQ(p(5, 4), -m(5, 4));
}

TEST(NablaJ, FlatEntries) {
  for (double t : kTs) {
    auto nj = nabla_j(flat(), t, AcsSign::plus);
    EXPECT_NEAR(nj.comps(0, 2, 5), 1 / t, 1e-15);
    EXPECT_NEAR(nj.comps(0, 3, 4), -1 / t, 1e-15);
    for (int a = 0; a < 4; ++a) EXPECT_EQ(nj.comps(0, 4, a), 0.0);
  }
}

TEST(NablaJ, KahlerEinsteinVanishesAndHalfScaleDoesNot) {
  for (double t : kTs) {
    EXPECT_LT(max_abs(nabla_j(esd(12 / (t * t), 5), t, AcsSign::plus).comps), 1e-12);
    auto nj = nabla_j(esd(6 / (t * t), 5), t, AcsSign::plus);
    EXPECT_NEAR(nj.comps(0, 2, 5), 1 / (2 * t), 1e-12);
    EXPECT_NEAR(nj.comps(0, 3, 4), -1 / (2 * t), 1e-12);
  }
}

TEST(NablaJ, AntisymmetricAndCompatible) {
  for (AcsSign s : kSigns)
    for (std::uint64_t i = 0; i < 20; ++i) {
      auto nj = nabla_j(random_jet1(i), 1.4, s);
      for (int p = 0; p < 6; ++p)
        for (int q = 0; q < 6; ++q)
          for (int r = 0; r < 6; ++r) ASSERT_EQ(nj.comps(p, q, r), -nj.comps(q, p, r));
      ASSERT_LT(nabla_j_compatibility_residual(nj), 1e-10);
    }
  EXPECT_THROW(nabla_j(flat(), 0.0, AcsSign::plus), parameter_error);
}

TEST(NablaJNorm, ClosedValuesAndMethodsAgree) {
  for (double t : kTs) {
    EXPECT_NEAR(nabla_j_norm2(flat(), t, AcsSign::plus), 8 / (t * t), 1e-12);
    EXPECT_NEAR(nabla_j_norm2(flat(), t, AcsSign::plus, NormMethod::formula), 8 / (t * t), 1e-12);
    EXPECT_LT(nabla_j_norm2(esd(12 / (t * t)), t, AcsSign::plus), 1e-24);
    for (AcsSign s : kSigns)
      for (std::uint64_t i = 0; i < 50; ++i) {
        auto j = random_jet1(i);
        double d = nabla_j_norm2(j, t, s), f = nabla_j_norm2(j, t, s, NormMethod::formula);
        ASSERT_LT(std::fabs(d - f) / (1 + d), 1e-10) << sign_name(s) << i;
      }
  }
}

TEST(KahlerForm, DifferentialAndCodifferential) {
  EXPECT_NEAR(kahler_differential(flat(), 1.0, AcsSign::plus).norm2(), 24.0, 1e-12);
  for (double t : kTs) {
    EXPECT_NEAR(kahler_differential(flat(), t, AcsSign::plus).norm2(), 24 / (t * t), 1e-12);
    EXPECT_LT(max_abs(kahler_differential(esd(12 / (t * t), 2), t, AcsSign::plus).full), 1e-12);
    for (std::uint64_t i = 0; i < 20; ++i) {
      auto j = random_jet1(i);
      auto p = kahler_codifferential_generic(nabla_j(j, t, AcsSign::plus));
      auto m = kahler_codifferential_generic(nabla_j(j, t, AcsSign::minus));
      auto tab = kahler_codifferential(j, t);
      for (int k = 0; k < 6; ++k) {
        ASSERT_NEAR(p[k], m[k], 1e-12);
        ASSERT_NEAR(p[k], tab[k], 1e-12);
      }
      for (AcsSign s : kSigns) {
        auto dw = kahler_differential(j, t, s);
        ASSERT_LT(max_abs_diff(dw.full, kahler_differential_generic(nabla_j(j, t, s))), 1e-10);
      }
    }
  }
}

TEST(NormIdentity, HoldsForPlusSign) {
  for (double t : kTs)
    for (std::uint64_t i = 0; i < 200; ++i) {
      auto j = random_jet1(i);
      double n2 = nabla_j_norm2(j, t, AcsSign::plus);
      double rhs = kahler_differential(j, t, AcsSign::plus).norm2() / 3 +
                   norm2(nijenhuis(j, t, AcsSign::plus).comps) / 8;
      ASSERT_LT(std::fabs(n2 - rhs) / (1 + n2), 1e-10) << t << " " << i;
    }
}

TEST(NormIdentity, HoldsForMinusSign) {
  for (double t : kTs)
    for (std::uint64_t i = 0; i < 200; ++i) {
      auto j = random_jet1(i);
      double n2 = nabla_j_norm2(j, t, AcsSign::minus);
      double rhs = kahler_differential(j, t, AcsSign::minus).norm2() / 3 +
                   norm2(nijenhuis(j, t, AcsSign::minus).comps) / 8;
      ASSERT_LT(std::fabs(n2 - rhs) / (1 + n2), 1e-10) << t << " " << i;
    }
}

TEST(Laplacian, SelfDualHarmonicAndFlatZero) {
  for (double t : kTs) {
    EXPECT_LT(max_abs(laplacian_j(flat(), t)), 1e-12);
    for (std::uint64_t i = 0; i < 10; ++i) {
      auto j = random_curvature(i, CurvatureClass::self_dual);
      j.dR = DRiemann4<double>{};
      ASSERT_LT(max_abs(laplacian_j(j, t)), 1e-12);
    }
    auto g = random_jet1(3);
    EXPECT_GT(max_abs(laplacian_j(g, t)), 1e-3);
    EXPECT_LT(max_abs_diff(laplacian_j(g, t), laplacian_j_generic(g, t)), 1e-10);
  }
}

TEST(Laplacian, DivWeylBridge) {
  for (double t : kTs)
    for (std::uint64_t i = 0; i < 20; ++i) {
      auto j = random_jet1(i);
      auto d = div_weyl_plus(j);
      ASSERT_NEAR(laplacian_j(j, t)(0, 4), 2 * t * (d(1, 0, 2) - d(0, 3, 0)), 1e-10);
    }
}

TEST(Nijenhuis, DiagonalBlocksEntries) {
  auto n = nijenhuis(diagonal(0, 1, 3), 1.0, AcsSign::plus);
  EXPECT_NEAR(n.comps(4, 0, 2), 4.0, 1e-14);
  EXPECT_NEAR(n.comps(4, 0, 3), 0.0, 1e-14);
  for (double t : kTs) EXPECT_NEAR(nijenhuis(diagonal(0, 1, 3), t, AcsSign::plus).comps(4, 0, 2), 4 * t, 1e-13);
}

TEST(Nijenhuis, SelfDualVanishes) {
  for (std::uint64_t i = 0; i < 20; ++i) {
    auto j = random_curvature(i, CurvatureClass::self_dual);
    for (double t : kTs) {
      ASSERT_LT(max_abs(nijenhuis(j, t, AcsSign::plus).comps), 1e-12);
      ASSERT_LT(nijenhuis_norm2_closed(j, t), 1e-24);
    }
  }
}

TEST(Nijenhuis, EellsSalamonEntry) {
  for (double t : kTs) {
    for (std::uint64_t i = 0; i < 10; ++i) {
      auto n = nijenhuis(random_jet1(i), t, AcsSign::minus);
      ASSERT_NEAR(n.comps(0, 2, 4), -2 / t, 1e-12);
      ASSERT_GE(max_abs(n.comps), 2 / t - 1e-12);
    }
    EXPECT_NEAR(nijenhuis(flat(), t, AcsSign::minus).comps(0, 2, 4), -2 / t, 1e-15);
  }
}

TEST(Nijenhuis, TablesMatchDefinitionAndClosedNorm) {
  for (double t : kTs)
    for (std::uint64_t i = 0; i < 100; ++i) {
      auto j = random_jet1(i);
      for (AcsSign s : kSigns) {
        auto a = nijenhuis(j, t, s, NijMethod::tables), b = nijenhuis(j, t, s, NijMethod::generic);
        ASSERT_LT(max_abs_diff(a.comps, b.comps), 1e-10);
        for (int p = 0; p < 6; ++p)
          for (int x = 0; x < 6; ++x)
            for (int q = 0; q < 6; ++q) ASSERT_NEAR(a.comps(p, x, q), -a.comps(p, q, x), 1e-14);
      }
      double nn = norm2(nijenhuis(j, t, AcsSign::plus).comps);
      ASSERT_LT(std::fabs(nn - nijenhuis_norm2_closed(j, t)) / (1 + nn), 1e-10);
    }
}

TEST(Nijenhuis, NormIsFrameInvariant) {
  for (std::uint64_t i = 0; i < 20; ++i) {
    auto j = random_jet1(i);
    auto a = haar_random_rotation(i, 4);
    // only rotations fixing the first Λ⁺ axis keep the fibre point
    auto pr = split_mu(a);
    double c = std::cos(0.3 * i), s = std::sin(0.3 * i);
    auto plus = identity<double, 3>();
    plus(1, 1) = plus(2, 2) = c;
    plus(1, 2) = -s;
    plus(2, 1) = s;
    auto r = compose_mu(RotationPair{plus, pr.minus});
    auto rj = rotate_jet(j, r);
    double x = norm2(nijenhuis(j, 1.0, AcsSign::plus).comps), y = norm2(nijenhuis(rj, 1.0, AcsSign::plus).comps);
    ASSERT_LT(std::fabs(x - y) / (1 + x), 1e-9);
  }
}

TEST(Sigma, GammaMatchesBlocks) {
  auto sg = sigma_gamma(diagonal(1, 2, 5));
  EXPECT_NEAR(sg.sigma, 14.0, 1e-14);
  EXPECT_NEAR(sg.gamma, -6.0, 1e-14);
}

TEST(NablaNijenhuis, SelfDualZeroAndAntisymmetric) {
  for (double t : kTs) {
    for (std::uint64_t i = 0; i < 10; ++i) {
      auto j = random_curvature(i, CurvatureClass::self_dual);
      j.dR = DRiemann4<double>{};
      ASSERT_LT(max_abs(nabla_nijenhuis(j, t, AcsSign::plus)), 1e-12);
    }
    for (AcsSign s : kSigns) {
      auto d = nabla_nijenhuis(random_jet1(7), t, s);
      for (int p = 0; p < 6; ++p)
        for (int x = 0; x < 6; ++x)
          for (int q = 0; q < 6; ++q)
            for (int k = 0; k < 6; ++k) ASSERT_NEAR(d(p, x, q, k), -d(p, q, x, k), 1e-12);
    }
    EXPECT_GT(max_abs(nabla_nijenhuis(flat(), t, AcsSign::minus)), 1e-3);
  }
  EXPECT_GT(max_abs(nabla_nijenhuis(random_jet1(7), 1.0, AcsSign::plus)), 1e-3);
}

TEST(DivNijenhuis, SelfDualZeroAndDiagonalReduction) {
  for (double t : kTs) {
    for (std::uint64_t i = 0; i < 10; ++i) {
      auto j = self_dual_jet(i);
      auto d = div_nijenhuis(j, t, AcsSign::plus);
      ASSERT_LT(std::fmax(max_abs(d.div1), max_abs(d.div2)), 1e-12);
    }
    // N¹_{1t,t} + N²_{2t,t} scales with (A33 − A22)² at fixed t
    auto v = [&](double a1, double a2, double a3) {
      auto d = div_nijenhuis(diagonal(a1, a2, a3), t, AcsSign::plus);
      return d.div2(0, 0) + d.div2(1, 1);
    };
    double base = v(1, 2, 3);
    EXPECT_GT(std::fabs(base), 1e-6);
    EXPECT_NEAR(v(1, 2, 4), 4 * base, 1e-10);
    EXPECT_NEAR(v(-1, 0.5, 1.5), base, 1e-10);
    EXPECT_NEAR(v(2, 1, 1), 0.0, 1e-12);
  }
}

TEST(DivNijenhuis, FlatMinusSignIsDivergenceFree) {
  for (double t : kTs) {
    auto d = div_nijenhuis(flat(), t, AcsSign::minus);
    EXPECT_LT(max_abs(d.div2), 1e-12);
  }
}

}  // namespace
