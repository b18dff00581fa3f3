#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "curvature4.hpp"
#include "errors.hpp"
#include "rng.hpp"
#include "tensor.hpp"

namespace twistorlab {

using Quat = std::array<double, 4>;  // (w, x, y, z), ℝ⁴ ≅ ℍ via e1,e2,e3,e4 ↦ 1,i,j,k

struct Rotation4 {
  Mat4<double> m = identity<double, 4>();
};

struct RotationPair {
  Mat3<double> plus = identity<double, 3>();
  Mat3<double> minus = identity<double, 3>();
};

namespace detail {

inline Quat qmul(const Quat& a, const Quat& b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

inline Quat qconj(const Quat& a) { return {a[0], -a[1], -a[2], -a[3]}; }

inline Quat qnormalize(Quat a) {
  double n = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]);
  for (auto& x : a) x /= n;
  return a;
}

inline Quat unit(int i) {
  Quat e{0, 0, 0, 0};
  e[i] = 1;
  return e;
}

// x ↦ p x q̄ as a 4×4 matrix
inline Mat4<double> lr_matrix(const Quat& p, const Quat& q) {
  Mat4<double> m;
  Quat qb = qconj(q);
  for (int j = 0; j < 4; ++j) {
    Quat y = qmul(qmul(p, unit(j)), qb);
    for (int i = 0; i < 4; ++i) m(i, j) = y[i];
  }
  return m;
}

// v ↦ p v p̄ on imaginary quaternions
inline Mat3<double> conj_matrix(const Quat& p) {
  Mat3<double> m;
  for (int j = 0; j < 3; ++j) {
    Quat y = qmul(qmul(p, unit(j + 1)), qconj(p));
    for (int i = 0; i < 3; ++i) m(i, j) = y[i + 1];
  }
  return m;
}

// unit quaternion of an SO(3) matrix, largest-pivot branch
inline Quat quat_of_so3(const Mat3<double>& r) {
  double tr = trace(r);
  std::array<double, 4> piv{tr, r(0, 0), r(1, 1), r(2, 2)};
  int k = 0;
  for (int i = 1; i < 4; ++i)
    if (piv[i] > piv[k]) k = i;
  Quat q;
  if (k == 0) {
    double s = std::sqrt(1 + tr) * 2;
    q = {0.25 * s, (r(2, 1) - r(1, 2)) / s, (r(0, 2) - r(2, 0)) / s, (r(1, 0) - r(0, 1)) / s};
  } else if (k == 1) {
    double s = std::sqrt(1 + r(0, 0) - r(1, 1) - r(2, 2)) * 2;
    q = {(r(2, 1) - r(1, 2)) / s, 0.25 * s, (r(0, 1) + r(1, 0)) / s, (r(0, 2) + r(2, 0)) / s};
  } else if (k == 2) {
    double s = std::sqrt(1 + r(1, 1) - r(0, 0) - r(2, 2)) * 2;
    q = {(r(0, 2) - r(2, 0)) / s, (r(0, 1) + r(1, 0)) / s, 0.25 * s, (r(1, 2) + r(2, 1)) / s};
  } else {
    double s = std::sqrt(1 + r(2, 2) - r(0, 0) - r(1, 1)) * 2;
    q = {(r(1, 0) - r(0, 1)) / s, (r(0, 2) + r(2, 0)) / s, (r(1, 2) + r(2, 1)) / s, 0.25 * s};
  }
  return qnormalize(q);
}

inline double det3(const Mat3<double>& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

inline double det4(const Mat4<double>& m) {
  double d = 0;
  for (int c = 0; c < 4; ++c) {
    Mat3<double> minor;
    for (int i = 1; i < 4; ++i)
      for (int j = 0, jj = 0; j < 4; ++j) {
        if (j == c) continue;
        minor(i - 1, jj++) = m(i, j);
      }
    d += (c % 2 ? -1 : 1) * m(0, c) * det3(minor);
  }
  return d;
}

template <int D>
void check_special_orthogonal(const Tensor<double, D, 2>& m, double tol) {
  double o = max_abs_diff(matmul(transpose(m), m), identity<double, D>());
  if (!(o <= tol)) throw invalid_rotation("matrix is not orthogonal", o);
  double d;
  if constexpr (D == 4)
    d = det4(m);
  else
    d = det3(m);
  if (!(std::fabs(d - 1) <= tol)) throw invalid_rotation("determinant is not +1", std::fabs(d - 1));
}

}  // namespace detail

inline Rotation4 make_rotation4(const Mat4<double>& m) {
  detail::check_special_orthogonal<4>(m, 1e-12);
  return Rotation4{m};
}

inline RotationPair make_rotation_pair(const Mat3<double>& plus, const Mat3<double>& minus) {
  detail::check_special_orthogonal<3>(plus, 1e-12);
  detail::check_special_orthogonal<3>(minus, 1e-12);
  return RotationPair{plus, minus};
}

// Factor a = (x ↦ p x q̄). Every a is (p⊗q) contracted with the fixed basis
// L(e_i)R(ē_j), which is Frobenius-orthogonal with norm² 4, so p_i q_j is a
// plain projection; the largest row of that rank-one matrix is used as pivot.
inline std::pair<Quat, Quat> quaternion_factors(const Rotation4& a) {
  detail::check_special_orthogonal<4>(a.m, 1e-12);
  double M[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      auto K = detail::lr_matrix(detail::unit(i), detail::unit(j));
      M[i][j] = 0.25 * dot(K, a.m);
    }
  int best = 0;
  double bn = -1;
  for (int i = 0; i < 4; ++i) {
    double n = M[i][0] * M[i][0] + M[i][1] * M[i][1] + M[i][2] * M[i][2] + M[i][3] * M[i][3];
    if (n > bn) { bn = n; best = i; }
  }
  Quat q = detail::qnormalize({M[best][0], M[best][1], M[best][2], M[best][3]});
  Quat p{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) p[i] += M[i][j] * q[j];
  return {detail::qnormalize(p), q};
}

inline RotationPair split_mu(const Rotation4& a) {
  auto [p, q] = quaternion_factors(a);
  return RotationPair{detail::conj_matrix(p), detail::conj_matrix(q)};
}

// one preimage of μ (the other is its negative)
inline Rotation4 compose_mu(const RotationPair& pr) {
  detail::check_special_orthogonal<3>(pr.plus, 1e-12);
  detail::check_special_orthogonal<3>(pr.minus, 1e-12);
  return Rotation4{detail::lr_matrix(detail::quat_of_so3(pr.plus), detail::quat_of_so3(pr.minus))};
}

inline Rotation4 operator*(const Rotation4& a, const Rotation4& b) { return Rotation4{matmul(a.m, b.m)}; }

template <class T>
CurvatureBlocks<T> transform_blocks(const CurvatureBlocks<T>& k, const RotationPair& pr) {
  CurvatureBlocks<T> out;
  out.A = congruence(pr.plus, k.A);
  out.C = congruence(pr.minus, k.C);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      T s{};
      for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) s += pr.minus(p, i) * k.B(p, q) * pr.plus(q, j);
      out.B(i, j) = s;
    }
  return out;
}

// R'_{i..} = a_{p i} ... R_{p ..}, one factor per slot
template <class T, int R>
T4<T, R> rotate_tensor(const T4<T, R>& X, const Mat4<double>& a) {
  T4<T, R> cur = X;
  for (int slot = 0; slot < R; ++slot) {
    T4<T, R> nxt;
    int stride = ipow(4, R - 1 - slot);
    for (int k = 0; k < cur.size; ++k) {
      int i = (k / stride) % 4;
      int base = k - i * stride;
      T s{};
      for (int p = 0; p < 4; ++p) s += a(p, i) * cur.v[base + p * stride];
      nxt.v[k] = s;
    }
    cur = nxt;
  }
  return cur;
}

template <class T>
Riemann4<T> rotate_riemann(const Riemann4<T>& R, const Rotation4& a) { return rotate_tensor(R, a.m); }

template <class T>
CurvatureJet<T> rotate_jet(const CurvatureJet<T>& j, const Rotation4& a) {
  CurvatureJet<T> out;
  out.R = rotate_tensor(j.R, a.m);
  if (j.dR) out.dR = rotate_tensor(*j.dR, a.m);
  if (j.d2) out.d2 = SecondContractions<T>{rotate_tensor(j.d2->K, a.m)};
  return out;
}

inline Rotation4 haar_random_rotation(std::uint64_t seed, std::uint64_t stream = 0) {
  Rng rng(seed, 0x5eed0000ULL + stream);
  Quat p{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
  Quat q{rng.normal(), rng.normal(), rng.normal(), rng.normal()};
  return Rotation4{detail::lr_matrix(detail::qnormalize(p), detail::qnormalize(q))};
}

// a₊ / a₋ matrices used by the classical arguments to expose residuals
inline std::vector<Rotation4> structured_rotations() {
  const double h = 1 / std::sqrt(2.0), s3 = std::sqrt(3.0) / 2;
  auto m3 = [](std::initializer_list<double> x) {
    Mat3<double> m;
    int k = 0;
    for (double y : x) m.v[k++] = y;
    return m;
  };
  auto I = identity<double, 3>();
  std::vector<RotationPair> pairs = {
      {m3({1, 0, 0, 0, 0, -1, 0, 1, 0}), I},
      {m3({0, -1, 0, h, 0, -h, h, 0, h}), I},
      {m3({h, -h, 0, h, h, 0, 0, 0, 1}), I},
      {m3({0.5, -s3, 0, s3, 0.5, 0, 0, 0, 1}), I},
      {I, m3({1, 0, 0, 0, 0, 1, 0, -1, 0})},
      {I, m3({0, 1, 0, -1, 0, 0, 0, 0, 1})},
  };
  std::vector<Rotation4> out;
  for (const auto& p : pairs) out.push_back(compose_mu(p));
  return out;
}

}  // namespace twistorlab
