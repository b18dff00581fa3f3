#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"
#include "tensor.hpp"

namespace twistorlab {

template <class T> using Riemann4 = T4<T, 4>;
template <class T> using DRiemann4 = T4<T, 5>;  // (a,b,c,d;e) = R_abcd,e

// K_pqab = Σ_d R_pqad,db; the q-combinations of K are all a second jet is
// ever asked for, and K itself is what transforms under frame changes.
template <class T>
struct SecondContractions {
  T4<T, 4> K{};
};

template <class T>
struct CurvatureJet {
  Riemann4<T> R{};
  std::optional<DRiemann4<T>> dR;
  std::optional<SecondContractions<T>> d2;
};

template <class T>
struct QTensors {
  Mat4<T> qd, qt, qq;
  T4<T, 3> dqd{}, dqt{}, dqq{};   // (a,b,c) = (qX_ab),c
  Mat4<T> q2d{}, q2t{}, q2q{};
  bool has_d1 = false;
  bool has_d2 = false;
};

template <class T>
struct CurvatureBlocks {
  Mat3<T> A, B, C;
};

enum class CurvatureClass { generic, einstein, self_dual, einstein_self_dual, ricci_flat };

namespace detail {

// pair list (p,q,r,s) of the three self-dual basis forms θ^p∧θ^q + θ^r∧θ^s
inline constexpr int kPairs[3][4] = {{0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};

inline Tensor<double, 4, 3> basis_forms(int sign) {
  Tensor<double, 4, 3> b;
  for (int i = 0; i < 3; ++i) {
    auto [p, q, r, s] = kPairs[i];
    b(i, p, q) = 1;
    b(i, q, p) = -1;
    b(i, r, s) = sign;
    b(i, s, r) = -sign;
  }
  return b;
}

inline const Tensor<double, 4, 3>& bplus() {
  static const auto b = basis_forms(1);
  return b;
}
inline const Tensor<double, 4, 3>& bminus() {
  static const auto c = basis_forms(-1);
  return c;
}

template <class T>
T pair_form(const Riemann4<T>& R, const Tensor<double, 4, 3>& x, int i, const Tensor<double, 4, 3>& y, int j) {
  T s{};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      if (x(i, a, b) == 0) continue;
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d)
          if (y(j, c, d) != 0) s += x(i, a, b) * R(a, b, c, d) * y(j, c, d);
    }
  return s * 0.125;
}

}  // namespace detail

// residual of the algebraic curvature symmetries, including first Bianchi
template <class T, int D>
double riemann_symmetry_residual(const Tensor<T, D, 4>& R) {
  double m = 0;
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      for (int c = 0; c < D; ++c)
        for (int d = 0; d < D; ++d) {
          const T& x = R(a, b, c, d);
          m = std::fmax(m, std::fabs(value(x + R(b, a, c, d))));
          m = std::fmax(m, std::fabs(value(x + R(a, b, d, c))));
          m = std::fmax(m, std::fabs(value(x - R(c, d, a, b))));
          m = std::fmax(m, std::fabs(value(x + R(a, c, d, b) + R(a, d, b, c))));
        }
  return m;
}

template <class T>
double bianchi2_residual(const DRiemann4<T>& dR) {
  double m = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d)
          for (int e = 0; e < 4; ++e)
            m = std::fmax(m, std::fabs(value(dR(a, b, c, d, e) + dR(a, b, d, e, c) + dR(a, b, e, c, d))));
  return m;
}

template <class T>
double jet_symmetry_residual(const DRiemann4<T>& dR) {
  double m = 0;
  for (int e = 0; e < 4; ++e) {
    Riemann4<T> s;
    for (int k = 0; k < s.size; ++k) s.v[k] = dR.v[k * 4 + e];
    m = std::fmax(m, riemann_symmetry_residual(s));
  }
  return m;
}

template <class T>
void validate(const CurvatureJet<T>& jet, double tol = 1e-12) {
  double scale = std::fmax(1.0, max_abs(jet.R));
  double r = riemann_symmetry_residual(jet.R);
  if (!(r <= tol * scale)) throw invalid_curvature("riemann tensor violates curvature symmetries", r);
  if (jet.dR) {
    double ds = std::fmax(1.0, max_abs(*jet.dR));
    double s = jet_symmetry_residual(*jet.dR);
    if (!(s <= tol * ds)) throw invalid_curvature("nabla_riemann violates curvature symmetries in slots 1-4", s);
    double b = bianchi2_residual(*jet.dR);
    if (!(b <= 1e-10 * ds)) throw invalid_curvature("nabla_riemann violates second Bianchi identity", b);
  }
}

template <class T>
Mat4<T> ricci(const Riemann4<T>& R) {
  Mat4<T> m;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) m(a, b) += R(c, a, c, b);
  return m;
}

template <class T>
T scalar(const Riemann4<T>& R) { return trace(ricci(R)); }

template <class T>
QTensors<T> q_tensors(const CurvatureJet<T>& jet) {
  QTensors<T> q;
  const auto& R = jet.R;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      q.qd(a, b) = R(0, 1, a, b) + R(2, 3, a, b);
      q.qt(a, b) = R(0, 2, a, b) + R(3, 1, a, b);
      q.qq(a, b) = R(0, 3, a, b) + R(1, 2, a, b);
    }
  if (jet.dR) {
    const auto& D = *jet.dR;
    q.has_d1 = true;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c) {
          q.dqd(a, b, c) = D(0, 1, a, b, c) + D(2, 3, a, b, c);
          q.dqt(a, b, c) = D(0, 2, a, b, c) + D(3, 1, a, b, c);
          q.dqq(a, b, c) = D(0, 3, a, b, c) + D(1, 2, a, b, c);
        }
  }
  if (jet.d2) {
    q.has_d2 = true;
    const auto& K = jet.d2->K;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        q.q2d(a, b) = K(0, 1, a, b) + K(2, 3, a, b);
        q.q2t(a, b) = K(0, 2, a, b) + K(3, 1, a, b);
        q.q2q(a, b) = K(0, 3, a, b) + K(1, 2, a, b);
      }
  }
  return q;
}

template <class T>
CurvatureBlocks<T> block_decompose(const Riemann4<T>& R) {
  double r = riemann_symmetry_residual(R);
  if (!(r <= 1e-12 * std::fmax(1.0, max_abs(R))))
    throw invalid_curvature("block_decompose: input violates curvature symmetries", r);
  CurvatureBlocks<T> k;
  const auto& b = detail::bplus();
  const auto& c = detail::bminus();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      k.A(i, j) = detail::pair_form(R, b, i, b, j);
      k.B(i, j) = detail::pair_form(R, c, i, b, j);
      k.C(i, j) = detail::pair_form(R, c, i, c, j);
    }
  return k;
}

template <class T>
Riemann4<T> assemble_from_blocks(const CurvatureBlocks<T>& k) {
  double scale = std::fmax(1.0, std::fmax(max_abs(k.A), max_abs(k.C)));
  double asym = std::fmax(max_abs_diff(k.A, transpose(k.A)), max_abs_diff(k.C, transpose(k.C)));
  if (asym > 1e-12 * scale) throw inconsistent_blocks("A and C must be symmetric", asym);
  double tr = std::fabs(value(trace(k.A) - trace(k.C)));
  if (tr > 1e-12 * scale) throw inconsistent_blocks("tr A must equal tr C (first Bianchi)", tr);
  const auto& b = detail::bplus();
  const auto& c = detail::bminus();
  Riemann4<T> R;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int p = 0; p < 4; ++p)
        for (int q = 0; q < 4; ++q)
          for (int r = 0; r < 4; ++r)
            for (int s = 0; s < 4; ++s) {
              double bb = b(i, p, q) * b(j, r, s);
              double cc = c(i, p, q) * c(j, r, s);
              double cb = c(i, p, q) * b(j, r, s) + b(j, p, q) * c(i, r, s);
              if (bb == 0 && cc == 0 && cb == 0) continue;
              R(p, q, r, s) += 0.5 * (k.A(i, j) * bb + k.C(i, j) * cc + k.B(i, j) * cb);
            }
  return R;
}

// W± representative matrices
template <class T>
std::pair<Mat3<T>, Mat3<T>> weyl_blocks(const CurvatureBlocks<T>& k, const T& S) {
  auto wp = k.A;
  auto wm = k.C;
  for (int i = 0; i < 3; ++i) {
    wp(i, i) -= S / 12.0;
    wm(i, i) -= S / 12.0;
  }
  return {wp, wm};
}

template <class T>
double self_dual_residual(const CurvatureBlocks<T>& k) {
  return max_abs(weyl_blocks(k, T(trace(k.A) * 4.0)).first);
}

template <class T>
double einstein_residual(const CurvatureBlocks<T>& k) { return max_abs(k.B); }

// (δW⁺)_abc; antisymmetric and self-dual in (b,c)
template <class T>
T4<T, 3> div_weyl_plus(const CurvatureJet<T>& jet) {
  T4<T, 3> D;
  if (!jet.dR) return D;
  auto q = q_tensors(jet);
  const auto& dR = *jet.dR;
  std::array<T, 4> Sd{};
  for (int e = 0; e < 4; ++e)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) Sd[e] += dR(c, b, c, b, e);
  auto f = [&](char X, int i, int j, int k) -> T {
    const auto& d = X == 'd' ? q.dqd : X == 't' ? q.dqt : q.dqq;
    return d(i - 1, j - 1, k - 1);
  };
  auto S = [&](int a) { return Sd[a - 1]; };
  auto put = [&](int a, int b, int c, const T& x) {
    D(a - 1, b - 1, c - 1) = x;
    D(a - 1, c - 1, b - 1) = -x;
  };
  put(1, 2, 1, 0.25 * (f('d', 1, 2, 2) + f('d', 1, 3, 3) + f('d', 1, 4, 4)) - S(2) / 24.0);
  put(1, 3, 1, 0.25 * (f('t', 1, 2, 2) + f('t', 1, 3, 3) + f('t', 1, 4, 4)) - S(3) / 24.0);
  put(1, 4, 1, 0.25 * (f('q', 1, 2, 2) + f('q', 1, 3, 3) + f('q', 1, 4, 4)) - S(4) / 24.0);
  put(2, 1, 2, 0.25 * (f('d', 1, 2, 1) - f('d', 2, 3, 3) + f('d', 4, 2, 4)) - S(1) / 24.0);
  put(2, 1, 3, 0.25 * (f('t', 1, 2, 1) - f('t', 2, 3, 3) + f('t', 4, 2, 4)) - S(4) / 24.0);
  put(2, 1, 4, 0.25 * (f('q', 1, 2, 1) - f('q', 2, 3, 3) + f('q', 4, 2, 4)) + S(3) / 24.0);
  put(3, 1, 2, 0.25 * (f('d', 1, 3, 1) + f('d', 2, 3, 2) - f('d', 3, 4, 4)) + S(4) / 24.0);
  put(3, 1, 3, 0.25 * (f('t', 1, 3, 1) + f('t', 2, 3, 2) - f('t', 3, 4, 4)) - S(1) / 24.0);
  put(3, 1, 4, 0.25 * (f('q', 1, 3, 1) + f('q', 2, 3, 2) - f('q', 3, 4, 4)) - S(2) / 24.0);
  put(4, 1, 2, 0.25 * (f('d', 1, 4, 1) - f('d', 4, 2, 2) + f('d', 3, 4, 3)) - S(3) / 24.0);
  put(4, 1, 3, 0.25 * (f('t', 1, 4, 1) - f('t', 4, 2, 2) + f('t', 3, 4, 3)) + S(2) / 24.0);
  put(4, 1, 4, 0.25 * (f('q', 1, 4, 1) - f('q', 4, 2, 2) + f('q', 3, 4, 3)) - S(1) / 24.0);
  // the listed (a,1,c) entries determine the rest through self-duality in (b,c)
  for (int a = 1; a <= 4; ++a) {
    put(a, 3, 4, D(a - 1, 0, 1));
    put(a, 4, 2, D(a - 1, 0, 2));
    put(a, 2, 3, D(a - 1, 0, 3));
  }
  return D;
}

template <class T, int D>
Tensor<T, D, 4> kulkarni_nomizu(const Tensor<T, D, 2>& h, const Tensor<T, D, 2>& k) {
  Tensor<T, D, 4> out;
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      for (int c = 0; c < D; ++c)
        for (int d = 0; d < D; ++d)
          out(a, b, c, d) = h(a, c) * k(b, d) + h(b, d) * k(a, c) - h(a, d) * k(b, c) - h(b, c) * k(a, d);
  return out;
}

// Weyl part W = R − P∧g with Schouten P = (Ric − S g/(2(n−1)))/(n−2)
template <class T, int D>
Tensor<T, D, 4> weyl_part(const Tensor<T, D, 4>& R) {
  Tensor<T, D, 2> ric;
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      for (int c = 0; c < D; ++c) ric(a, b) += R(c, a, c, b);
  T S = trace(ric);
  auto g = identity<T, D>();
  auto P = (ric - g * (S / (2.0 * (D - 1)))) * (1.0 / (D - 2));
  return R - kulkarni_nomizu(P, g);
}

// largest single trace of a 4-tensor over any slot pair
template <class T, int D>
double trace_residual(const Tensor<T, D, 4>& W) {
  double m = 0;
  const int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (const auto& pr : pairs) {
    const int s1 = pr[0], s2 = pr[1];
    for (int x = 0; x < D; ++x)
      for (int y = 0; y < D; ++y) {
        T s{};
        for (int k = 0; k < D; ++k) {
          int idx[4];
          idx[s1] = k;
          idx[s2] = k;
          int f = 0;
          for (int j = 0; j < 4; ++j)
            if (j != s1 && j != s2) idx[j] = (f++ == 0 ? x : y);
          s += W(idx[0], idx[1], idx[2], idx[3]);
        }
        m = std::fmax(m, std::fabs(value(s)));
      }
  }
  return m;
}

// ---------------------------------------------------------------- generators

namespace detail {

inline Mat3<double> random_sym3(Rng& rng) {
  Mat3<double> m;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) m(i, j) = m(j, i) = rng.uniform(-1, 1);
  return m;
}

inline void set_trace(Mat3<double>& m, double tr) {
  double d = (tr - trace(m)) / 3.0;
  for (int i = 0; i < 3; ++i) m(i, i) += d;
}

inline Riemann4<double> riemann_projection(const Riemann4<double>& X) {
  Riemann4<double> R;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d)
          R(a, b, c, d) = (X(a, b, c, d) - X(b, a, c, d) - X(a, b, d, c) + X(b, a, d, c) + X(c, d, a, b) -
                           X(d, c, a, b) - X(c, d, b, a) + X(d, c, b, a)) / 8.0;
  Riemann4<double> out;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d)
          out(a, b, c, d) = R(a, b, c, d) - (R(a, b, c, d) + R(a, c, d, b) + R(a, d, b, c)) / 3.0;
  return out;
}

// Orthonormal basis (columns, 1024 rows) of admissible first jets for a class.
inline Eigen::MatrixXd jet_space(CurvatureClass cls) {
  // 20-dim basis of algebraic curvature tensors
  Eigen::MatrixXd U(256, 256);
  for (int k = 0; k < 256; ++k) {
    Riemann4<double> X;
    X.v[k] = 1;
    auto R = riemann_projection(X);
    for (int j = 0; j < 256; ++j) U(j, k) = R.v[j];
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> su(U, Eigen::ComputeThinU);
  int rk = 0;
  for (int i = 0; i < su.singularValues().size(); ++i)
    if (su.singularValues()(i) > 1e-9) ++rk;
  Eigen::MatrixXd B = su.matrixU().leftCols(rk);
  const int n = rk * 4;
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(1024, n);
  for (int k = 0; k < rk; ++k)
    for (int e = 0; e < 4; ++e)
      for (int j = 0; j < 256; ++j) M(j * 4 + e, k * 4 + e) = B(j, k);

  auto slice_of = [&](const Eigen::VectorXd& x, int e) {
    Riemann4<double> R;
    for (int j = 0; j < 256; ++j) R.v[j] = x(j * 4 + e);
    return R;
  };
  Eigen::MatrixXd C(1024, n);
  for (int col = 0; col < n; ++col) {
    Eigen::VectorXd x = M.col(col);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          for (int d = 0; d < 4; ++d)
            for (int e = 0; e < 4; ++e) {
              auto id = [](int i, int j, int k, int l, int m) { return (((i * 4 + j) * 4 + k) * 4 + l) * 4 + m; };
              C(id(a, b, c, d, e), col) = x(id(a, b, c, d, e)) + x(id(a, b, d, e, c)) + x(id(a, b, e, c, d));
            }
  }
  std::vector<Eigen::VectorXd> extra;
  for (int col = 0; col < n; ++col) {
    Eigen::VectorXd x = M.col(col);
    Eigen::VectorXd r(60);
    r.setZero();
    int z = 0;
    for (int e = 0; e < 4; ++e) {
      auto k = block_decompose(slice_of(x, e));
      bool sd = cls == CurvatureClass::self_dual || cls == CurvatureClass::einstein_self_dual;
      bool ein = cls == CurvatureClass::einstein || cls == CurvatureClass::einstein_self_dual ||
                 cls == CurvatureClass::ricci_flat;
      if (sd) {
        double tr = trace(k.A) / 3.0;
        r(z++) = k.A(0, 0) - tr;
        r(z++) = k.A(1, 1) - tr;
        r(z++) = k.A(0, 1);
        r(z++) = k.A(0, 2);
        r(z++) = k.A(1, 2);
      } else {
        z += 5;
      }
      if (ein) {
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) r(z++) = k.B(i, j);
        r(z++) = trace(k.A);
      } else {
        z += 10;
      }
    }
    extra.push_back(r);
  }
  Eigen::MatrixXd Call(1024 + 60, n);
  Call.topRows(1024) = C;
  for (int col = 0; col < n; ++col) Call.block(1024, col, 60, 1) = extra[col];
  Eigen::JacobiSVD<Eigen::MatrixXd> sc(Call, Eigen::ComputeFullV);
  int r2 = 0;
  for (int i = 0; i < sc.singularValues().size(); ++i)
    if (sc.singularValues()(i) > 1e-9) ++r2;
  Eigen::MatrixXd null = sc.matrixV().rightCols(n - r2);
  Eigen::MatrixXd K = M * null;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(K);
  return qr.householderQ() * Eigen::MatrixXd::Identity(1024, K.cols());
}

inline const Eigen::MatrixXd& cached_jet_space(CurvatureClass cls) {
  static const std::array<Eigen::MatrixXd, 5> spaces = [] {
    std::array<Eigen::MatrixXd, 5> s;
    for (int i = 0; i < 5; ++i) s[i] = jet_space(static_cast<CurvatureClass>(i));
    return s;
  }();
  return spaces[static_cast<int>(cls)];
}

}  // namespace detail

// Orthogonal projection onto first jets obeying curvature symmetries, second
// Bianchi and the linear constraints of the class.
inline DRiemann4<double> project_jet(const DRiemann4<double>& X, CurvatureClass cls = CurvatureClass::generic) {
  const auto& K = detail::cached_jet_space(cls);
  Eigen::Map<const Eigen::VectorXd> x(X.v.data(), 1024);
  Eigen::VectorXd y = K * (K.transpose() * x);
  DRiemann4<double> out;
  for (int i = 0; i < 1024; ++i) out.v[i] = y(i);
  return out;
}

inline CurvatureBlocks<double> random_blocks(Rng& rng, CurvatureClass cls, double S) {
  CurvatureBlocks<double> k;
  switch (cls) {
    case CurvatureClass::generic:
      k.A = detail::random_sym3(rng);
      for (auto& x : k.B.v) x = rng.uniform(-1, 1);
      k.C = detail::random_sym3(rng);
      detail::set_trace(k.C, trace(k.A));
      break;
    case CurvatureClass::einstein:
      k.A = detail::random_sym3(rng);
      k.C = detail::random_sym3(rng);
      detail::set_trace(k.C, trace(k.A));
      break;
    case CurvatureClass::self_dual: {
      double s = rng.uniform(-1, 1);
      k.A = identity<double, 3>() * s;
      for (auto& x : k.B.v) x = rng.uniform(-1, 1);
      k.C = detail::random_sym3(rng);
      detail::set_trace(k.C, 3 * s);
      break;
    }
    case CurvatureClass::einstein_self_dual:
      k.A = identity<double, 3>() * (S / 12.0);
      k.C = detail::random_sym3(rng);
      detail::set_trace(k.C, S / 4.0);
      break;
    case CurvatureClass::ricci_flat:
      k.A = detail::random_sym3(rng);
      detail::set_trace(k.A, 0);
      k.C = detail::random_sym3(rng);
      detail::set_trace(k.C, 0);
      break;
  }
  return k;
}

// S is used only by einstein_self_dual
inline CurvatureJet<double> random_curvature(std::uint64_t seed, CurvatureClass cls = CurvatureClass::generic,
                                             double S = 12.0) {
  Rng rng(seed, 1);
  CurvatureJet<double> j;
  j.R = assemble_from_blocks(random_blocks(rng, cls, S));
  return j;
}

inline DRiemann4<double> random_first_jet(Rng& rng, CurvatureClass cls) {
  DRiemann4<double> X;
  for (auto& x : X.v) x = rng.normal();
  return project_jet(X, cls);
}

inline CurvatureJet<double> random_jet1(std::uint64_t seed) {
  auto j = random_curvature(seed);
  Rng rng(seed, 2);
  j.dR = random_first_jet(rng, CurvatureClass::generic);
  return j;
}

// first jet whose derivative obeys the class too (e.g. ∇W⁺ = 0 for self-dual)
inline CurvatureJet<double> random_jet(std::uint64_t seed, CurvatureClass cls, double S = 12.0) {
  auto j = random_curvature(seed, cls, S);
  Rng rng(seed, 2);
  j.dR = random_first_jet(rng, cls);
  return j;
}

// ∇²R as (p,q,a,d;e,f); each f-slice is an admissible first jet. The
// Ricci-identity constraint is not imposed since only K is ever consumed.
inline T4<double, 6> random_second_jet(Rng& rng) {
  T4<double, 6> out;
  for (int f = 0; f < 4; ++f) {
    auto P = random_first_jet(rng, CurvatureClass::generic);
    for (int k = 0; k < 1024; ++k) out.v[k * 4 + f] = P.v[k];
  }
  return out;
}

inline SecondContractions<double> second_contractions(const T4<double, 6>& d2) {
  SecondContractions<double> s;
  for (int p = 0; p < 4; ++p)
    for (int q = 0; q < 4; ++q)
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          for (int d = 0; d < 4; ++d) s.K(p, q, a, b) += d2(p, q, a, d, d, b);
  return s;
}

// first and second jet, both generic
inline CurvatureJet<double> random_jet2(std::uint64_t seed, CurvatureClass cls = CurvatureClass::generic,
                                        double S = 12.0) {
  auto j = random_jet(seed, cls, S);
  Rng rng(seed, 3);
  j.d2 = second_contractions(random_second_jet(rng));
  return j;
}

}  // namespace twistorlab
