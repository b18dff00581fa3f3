#include <gtest/gtest.h>

#include <cmath>

#include <twistorlab/twistorlab.hpp>

using namespace twistorlab;

namespace {

Mat4<double> plane_rotation(int i, int j, double th) {
  auto m = identity<double, 4>();
  m(i, i) = m(j, j) = std::cos(th);
  m(i, j) = -std::sin(th);
  m(j, i) = std::sin(th);
  return m;
}

double blocks_diff(const CurvatureBlocks<double>& a, const CurvatureBlocks<double>& b) {
  return std::fmax(max_abs_diff(a.A, b.A), std::fmax(max_abs_diff(a.B, b.B), max_abs_diff(a.C, b.C)));
}

TEST(SplitMu, IdentityAndMinusIdentity) {
  auto p = split_mu(Rotation4{});
  EXPECT_LT(max_abs_diff(p.plus, identity<double, 3>()), 1e-15);
  EXPECT_LT(max_abs_diff(p.minus, identity<double, 3>()), 1e-15);
  auto q = split_mu(make_rotation4(identity<double, 4>() * -1.0));
  EXPECT_LT(max_abs_diff(q.plus, identity<double, 3>()), 1e-14);
  EXPECT_LT(max_abs_diff(q.minus, identity<double, 3>()), 1e-14);
}

TEST(SplitMu, RejectsInvalidRotations) {
  auto reflect = identity<double, 4>();
  reflect(0, 0) = -1;
  EXPECT_THROW(make_rotation4(reflect), invalid_rotation);
  auto skew = identity<double, 4>();
  skew(0, 1) = 1e-6;
  EXPECT_THROW(make_rotation4(skew), invalid_rotation);
  EXPECT_THROW(split_mu(Rotation4{reflect}), invalid_rotation);
}

TEST(SplitMu, PlaneRotationMatchesBlocksOfRotatedTensor) {
  auto a = make_rotation4(plane_rotation(0, 1, 0.7));
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto R = random_curvature(s).R;
    auto lhs = block_decompose(rotate_riemann(R, a));
    auto rhs = transform_blocks(block_decompose(R), split_mu(a));
    ASSERT_LT(blocks_diff(lhs, rhs), 1e-10) << s;
  }
}

TEST(SplitMu, EquivarianceOnRandomPairs) {
  double worst = 0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    auto R = random_curvature(1000 + s).R;
    auto a = haar_random_rotation(s);
    worst = std::fmax(worst, blocks_diff(block_decompose(rotate_riemann(R, a)),
                                         transform_blocks(block_decompose(R), split_mu(a))));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(SplitMu, Homomorphism) {
  double worst = 0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    auto a = haar_random_rotation(s, 0), b = haar_random_rotation(s, 1);
    auto pa = split_mu(a), pb = split_mu(b), pab = split_mu(a * b);
    worst = std::fmax(worst, max_abs_diff(pab.plus, matmul(pa.plus, pb.plus)));
    worst = std::fmax(worst, max_abs_diff(pab.minus, matmul(pa.minus, pb.minus)));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(SplitMu, ComposeRoundTrip) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    auto a = haar_random_rotation(s);
    auto back = split_mu(compose_mu(split_mu(a)));
    auto p = split_mu(a);
    EXPECT_LT(max_abs_diff(back.plus, p.plus), 1e-12);
    EXPECT_LT(max_abs_diff(back.minus, p.minus), 1e-12);
  }
}

TEST(TransformBlocks, IdentityPair) {
  Rng rng(3, 0);
  auto k = random_blocks(rng, CurvatureClass::generic, 12);
  auto I = identity<double, 3>();
  EXPECT_EQ(blocks_diff(transform_blocks(k, RotationPair{I, I}), k), 0.0);
}

TEST(TransformBlocks, PermutationSwapsDiagonal) {
  CurvatureBlocks<double> k;
  k.A(0, 0) = 1;
  k.A(1, 1) = 2;
  k.A(2, 2) = 3;
  Mat3<double> p;
  p(0, 0) = 1;
  p(1, 2) = 1;
  p(2, 1) = -1;
  auto I = identity<double, 3>();
  auto out = transform_blocks(k, RotationPair{p, I});
  EXPECT_DOUBLE_EQ(out.A(0, 0), 1);
  EXPECT_DOUBLE_EQ(out.A(1, 1), 3);
  EXPECT_DOUBLE_EQ(out.A(2, 2), 2);
}

TEST(RotateRiemann, IdentityInverseAndInvariance) {
  auto R = random_curvature(5).R;
  EXPECT_EQ(max_abs_diff(rotate_riemann(R, Rotation4{}), R), 0.0);
  auto a = haar_random_rotation(9);
  Rotation4 ai{transpose(a.m)};
  EXPECT_LT(max_abs_diff(rotate_riemann(rotate_riemann(R, a), ai), R), 1e-12);
  auto S4 = model("sphere", {{"k", 0.3}}).jet.R;
  EXPECT_LT(max_abs_diff(rotate_riemann(S4, a), S4), 1e-14);
  auto rr = rotate_riemann(R, a);
  EXPECT_LT(riemann_symmetry_residual(rr), 1e-12);
  EXPECT_NEAR(scalar(rr), scalar(R), 1e-10);
}

TEST(RotateJet, PreservesBianchiAndRoundTrips) {
  auto j = random_jet2(4);
  auto a = haar_random_rotation(4);
  auto r = rotate_jet(j, a);
  EXPECT_LT(bianchi2_residual(*r.dR), 1e-10);
  auto back = rotate_jet(r, Rotation4{transpose(a.m)});
  EXPECT_LT(max_abs_diff(*back.dR, *j.dR), 1e-12);
  EXPECT_LT(max_abs_diff(back.d2->K, j.d2->K), 1e-12);
  CurvatureJet<double> zero;
  zero.dR = DRiemann4<double>{};
  EXPECT_EQ(max_abs(*rotate_jet(zero, a).dR), 0.0);
}

TEST(Haar, DeterministicValidAndCentred) {
  auto a = haar_random_rotation(0), b = haar_random_rotation(0);
  EXPECT_EQ(max_abs_diff(a.m, b.m), 0.0);
  EXPECT_NO_THROW(make_rotation4(a.m));
  double mean[4] = {0, 0, 0, 0};
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    auto r = haar_random_rotation(77, static_cast<std::uint64_t>(i));
    for (int k = 0; k < 4; ++k) mean[k] += r.m(k, 0) / n;
  }
  for (double m : mean) EXPECT_LT(std::fabs(m), 5.0 / std::sqrt(double(n)));
}

TEST(Structured, AreRotationsWithOneTrivialFactor) {
  auto rs = structured_rotations();
  ASSERT_EQ(rs.size(), 6u);
  for (const auto& r : rs) {
    EXPECT_NO_THROW(make_rotation4(r.m));
    auto p = split_mu(r);
    double dp = max_abs_diff(p.plus, identity<double, 3>()), dm = max_abs_diff(p.minus, identity<double, 3>());
    EXPECT_TRUE(dp < 1e-12 || dm < 1e-12);
  }
}

}  // namespace
