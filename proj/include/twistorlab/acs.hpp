#pragma once

#include <array>
#include <string>
#include <vector>

#include "curvature4.hpp"
#include "errors.hpp"
#include "tensor.hpp"

namespace twistorlab {

enum class AcsSign { plus, minus };

inline int sign_value(AcsSign s) { return s == AcsSign::plus ? 1 : -1; }
inline const char* sign_name(AcsSign s) { return s == AcsSign::plus ? "+" : "-"; }

// (p,q,s) = J^p_{q,s}
template <class T>
struct NablaJ {
  T6<T, 3> comps{};
  AcsSign sign = AcsSign::plus;
};

template <class T>
struct KahlerDifferential {
  struct Coefficient {
    int p, q, r;  // 0-based, p < q < r
    T c;
  };
  std::vector<Coefficient> coefficients;
  T6<T, 3> full{};  // dω(e_p, e_q, e_r), totally antisymmetric
  AcsSign sign = AcsSign::plus;

  T norm2() const { return twistorlab::norm2(full); }
};

enum class NormMethod { direct, formula };

// J e_s = Σ_p J[p,s] e_p
inline Mat6<double> j_matrix(AcsSign sign) {
  Mat6<double> J;
  double s = sign_value(sign);
  J(1, 0) = 1;
  J(0, 1) = -1;
  J(3, 2) = 1;
  J(2, 3) = -1;
  J(5, 4) = s;
  J(4, 5) = -s;
  return J;
}

template <class T>
NablaJ<T> nabla_j(const CurvatureJet<T>& jet, double t, AcsSign sign) {
  require_t(t);
  auto q = q_tensors(jet);
  const auto &qt = q.qt, &qq = q.qq;
  NablaJ<T> out;
  out.sign = sign;
  auto& N = out.comps;
  auto put = [&](int p, int r, int s, const T& v) {
    N(p - 1, r - 1, s - 1) = v;
    N(r - 1, p - 1, s - 1) = -v;
  };
  const double h = t / 2, k = 2 / (t * t);
  put(1, 3, 5, -h * (qt(0, 3) + qt(1, 2)));
  put(1, 3, 6, h * (k - (qq(0, 3) + qq(1, 2))));
  put(1, 4, 5, -h * (k - (qt(0, 2) + qt(3, 1))));
  put(1, 4, 6, h * (qq(0, 2) + qq(3, 1)));
  for (int a = 0; a < 4; ++a) {
    if (sign == AcsSign::plus) {
      put(1, 5, a + 1, -h * (qt(1, a) + qq(0, a)));
      put(1, 6, a + 1, h * (qt(0, a) - qq(1, a)));
      put(3, 5, a + 1, -h * (qt(3, a) + qq(2, a)));
      put(3, 6, a + 1, h * (qt(2, a) - qq(3, a)));
    } else {
      put(1, 5, a + 1, -h * (qt(1, a) - qq(0, a)));
      put(1, 6, a + 1, -h * (qt(0, a) + qq(1, a)));
      put(3, 5, a + 1, -h * (qt(3, a) - qq(2, a)));
      put(3, 6, a + 1, -h * (qt(2, a) + qq(3, a)));
    }
  }
  const double e = sign_value(sign);
  for (int s = 0; s < 6; ++s) {
    put(2, 3, s + 1, N(0, 3, s));
    put(2, 4, s + 1, -N(0, 2, s));
    put(2, 5, s + 1, e * N(0, 5, s));
    put(2, 6, s + 1, -e * N(0, 4, s));
    put(4, 5, s + 1, e * N(2, 5, s));
    put(4, 6, s + 1, -e * N(2, 4, s));
  }
  return out;
}

// (∇J·J + J·∇J) along every direction; zero because J² = −I
template <class T>
double nabla_j_compatibility_residual(const NablaJ<T>& nj) {
  auto J = j_matrix(nj.sign);
  double m = 0;
  for (int s = 0; s < 6; ++s)
    for (int p = 0; p < 6; ++p)
      for (int q = 0; q < 6; ++q) {
        T x{};
        for (int r = 0; r < 6; ++r) x += nj.comps(p, r, s) * J(r, q) + J(p, r) * nj.comps(r, q, s);
        m = std::fmax(m, std::fabs(value(x)));
      }
  return m;
}

template <class T>
T nabla_j_norm2(const CurvatureJet<T>& jet, double t, AcsSign sign, NormMethod method = NormMethod::direct) {
  require_t(t);
  if (method == NormMethod::direct) return norm2(nabla_j(jet, t, sign).comps);
  auto q = q_tensors(jet);
  auto T_ = [&](int i, int j) { return q.qt(i - 1, j - 1); };
  auto U = [&](int i, int j) { return q.qq(i - 1, j - 1); };
  auto sq = [](const T& x) { return x * x; };
  T common = sq(T_(1, 4) + T_(2, 3)) + sq(U(1, 4) + U(2, 3)) + sq(T_(1, 3) + T_(4, 2)) + sq(U(1, 3) + U(4, 2)) -
             4 / (t * t) * (T_(1, 3) + T_(4, 2) + U(1, 4) + U(2, 3)) + 8 / (t * t * t * t) +
             2.0 * (sq(T_(1, 2)) + sq(U(1, 2)) + sq(T_(3, 4)) + sq(U(3, 4)));
  T mixed;
  if (sign == AcsSign::plus)
    mixed = sq(T_(2, 3) + U(1, 3)) + sq(T_(4, 2) - U(1, 4)) + sq(T_(1, 3) - U(2, 3)) + sq(T_(1, 4) + U(4, 2)) +
            sq(T_(1, 4) + U(1, 3)) + sq(U(2, 3) - T_(4, 2)) + sq(U(1, 4) - T_(1, 3)) + sq(T_(2, 3) + U(4, 2));
  else
    mixed = sq(T_(2, 3) - U(1, 3)) + sq(T_(4, 2) + U(1, 4)) + sq(T_(1, 3) + U(2, 3)) + sq(T_(1, 4) - U(4, 2)) +
            sq(U(1, 3) - T_(1, 4)) + sq(T_(4, 2) + U(2, 3)) + sq(T_(1, 3) + U(1, 4)) + sq(U(4, 2) - T_(2, 3));
  return t * t * (common + mixed);
}

// ω_{qr} = J^r_q, so ∇_s ω_{qr} = J^r_{q,s}; dω_{pqr} is the cyclic sum
template <class T>
T6<T, 3> kahler_differential_generic(const NablaJ<T>& nj) {
  T6<T, 3> dw;
  const auto& N = nj.comps;
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q)
      for (int r = 0; r < 6; ++r) dw(p, q, r) = N(r, q, p) + N(p, r, q) + N(q, p, r);
  return dw;
}

template <class T>
KahlerDifferential<T> kahler_differential(const CurvatureJet<T>& jet, double t, AcsSign sign) {
  require_t(t);
  auto q = q_tensors(jet);
  auto T_ = [&](int i, int j) { return q.qt(i - 1, j - 1); };
  auto U = [&](int i, int j) { return q.qq(i - 1, j - 1); };
  const double e = sign_value(sign), it = 1 / t;
  KahlerDifferential<T> out;
  out.sign = sign;
  auto put = [&](int p, int r, int s, const T& c) {
    const int idx[6][4] = {{p, r, s, 1}, {r, s, p, 1}, {s, p, r, 1}, {r, p, s, -1}, {p, s, r, -1}, {s, r, p, -1}};
    for (auto& x : idx) out.full(x[0] - 1, x[1] - 1, x[2] - 1) = c * double(x[3]);
  };
  put(1, 2, 5, -e * t * U(1, 2));
  put(1, 2, 6, e * t * T_(1, 2));
  put(1, 3, 5, -e * t * U(1, 3));
  put(1, 3, 6, e * t * T_(1, 3) - it);
  put(1, 4, 5, it - e * t * U(1, 4));
  put(1, 4, 6, e * t * T_(1, 4));
  put(2, 3, 5, it - e * t * U(2, 3));
  put(2, 3, 6, e * t * T_(2, 3));
  put(4, 2, 5, -e * t * U(4, 2));
  put(4, 2, 6, e * t * T_(4, 2) - it);
  put(3, 4, 5, -e * t * U(3, 4));
  put(3, 4, 6, e * t * T_(3, 4));
  for (int p = 0; p < 6; ++p)
    for (int r = p + 1; r < 6; ++r)
      for (int s = r + 1; s < 6; ++s) out.coefficients.push_back({p, r, s, out.full(p, r, s)});
  return out;
}

// δω_q = −Σ_p ∇_p ω_{pq}
template <class T>
std::array<T, 6> kahler_codifferential_generic(const NablaJ<T>& nj) {
  std::array<T, 6> d{};
  for (int q = 0; q < 6; ++q)
    for (int p = 0; p < 6; ++p) d[q] -= nj.comps(q, p, p);
  return d;
}

template <class T>
std::array<T, 6> kahler_codifferential(const CurvatureJet<T>& jet, double t) {
  require_t(t);
  auto q = q_tensors(jet);
  std::array<T, 6> d{};
  d[4] = t * (q.qt(0, 1) + q.qt(2, 3));
  d[5] = t * (q.qq(0, 1) + q.qq(2, 3));
  return d;
}

// (p,q,r,s) = J^p_{q,rs} for J⁺
template <class T>
T6<T, 4> hessian_j(const CurvatureJet<T>& jet, double t) {
  require_t(t);
  auto qs = q_tensors(jet);
  auto nj = nabla_j(jet, t, AcsSign::plus);
  const auto& NJ = nj.comps;
  auto Jd = [&](int p, int q, int r) -> T { return NJ(p - 1, q - 1, r - 1); };
  auto T_ = [&](int i, int j) -> T { return qs.qt(i - 1, j - 1); };
  auto U = [&](int i, int j) -> T { return qs.qq(i - 1, j - 1); };
  auto D = [&](int i, int j) -> T { return qs.qd(i - 1, j - 1); };
  auto dT = [&](int i, int j, int k) -> T { return qs.dqt(i - 1, j - 1, k - 1); };
  auto dU = [&](int i, int j, int k) -> T { return qs.dqq(i - 1, j - 1, k - 1); };
  T6<T, 4> H;
  auto put = [&](int p, int q, int r, int s, const T& v) {
    H(p - 1, q - 1, r - 1, s - 1) = v;
    H(q - 1, p - 1, r - 1, s - 1) = -v;
  };
  const double h = t / 2, h2 = t * t / 4, k2 = 2 / (t * t), k4 = 4 / (t * t);
  T A5 = k2 - (T_(1, 3) + T_(4, 2));
  T A6 = k2 - (U(1, 4) + U(2, 3));
  for (int r = 1; r <= 6; ++r) {
    for (int a = 1; a <= 4; ++a) {
      put(1, 2, r, a, -h * (Jd(1, 5, r) * (T_(2, a) + U(1, a)) + Jd(1, 6, r) * (U(2, a) - T_(1, a))));
      put(3, 4, r, a, h * (Jd(3, 6, r) * (T_(3, a) - U(4, a)) - Jd(3, 5, r) * (T_(4, a) + U(3, a))));
      put(5, 6, r, a,
          h * (Jd(1, 6, r) * (T_(1, a) - U(2, a)) + Jd(2, 6, r) * (T_(2, a) + U(1, a)) +
               Jd(3, 6, r) * (T_(3, a) - U(4, a)) + Jd(4, 6, r) * (T_(4, a) + U(3, a))));
    }
    T v5 = -h * (Jd(1, 3, r) * (T_(1, 4) + T_(2, 3)) + Jd(1, 4, r) * A5);
    T v6 = h * (Jd(1, 3, r) * A6 + Jd(1, 4, r) * (U(1, 3) + U(4, 2)));
    put(1, 2, r, 5, v5);
    put(1, 2, r, 6, v6);
    put(3, 4, r, 5, v5);
    put(3, 4, r, 6, v6);
  }
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b) {
      put(1, 3, a, b,
          h2 * ((T_(3, a) - U(4, a)) * U(1, b) - (T_(4, a) + U(3, a)) * T_(1, b) + (T_(2, a) + U(1, a)) * T_(3, b)) +
              h2 * (-(T_(1, a) - U(2, a)) * U(3, b) + (T_(1, 4) + T_(2, 3)) * T_(a, b) - A6 * U(a, b)));
      put(1, 4, a, b,
          h2 * ((T_(3, a) - U(4, a)) * T_(1, b) + (T_(4, a) + U(3, a)) * U(1, b) + (T_(2, a) + U(1, a)) * T_(4, b)) +
              h2 * (-(T_(1, a) - U(2, a)) * U(4, b) - (U(1, 3) + U(4, 2)) * U(a, b) + A5 * T_(a, b)));
    }
  T s12 = T_(1, 2) + T_(3, 4), u12 = U(1, 2) + U(3, 4);
  for (int a = 1; a <= 4; ++a) {
    put(1, 3, 5, a, -h * (dT(1, 4, a) + dT(2, 3, a)));
    put(1, 3, 6, a, -h * (dU(1, 4, a) + dU(2, 3, a)));
    put(1, 4, 5, a, h * (dT(1, 3, a) + dT(4, 2, a)));
    put(1, 4, 6, a, h * (dU(1, 3, a) + dU(4, 2, a)));
  }
  put(1, 3, 5, 5, h2 * s12 * (k4 - (T_(1, 3) + T_(4, 2))));
  put(1, 3, 5, 6, -h2 * (u12 * (T_(1, 3) + T_(4, 2))));
  put(1, 3, 6, 5, h2 * (k4 * u12 - (U(1, 3) + U(4, 2)) * s12));
  put(1, 3, 6, 6, -h2 * (U(1, 3) + U(4, 2)) * u12);
  put(1, 4, 5, 5, -h2 * s12 * (T_(1, 4) + T_(2, 3)));
  put(1, 4, 5, 6, h2 * (k4 * s12 - (T_(1, 4) + T_(2, 3)) * u12));
  put(1, 4, 6, 5, -h2 * s12 * (U(1, 4) + U(2, 3)));
  put(1, 4, 6, 6, h2 * u12 * (k4 - (U(1, 4) + U(2, 3))));
  auto csum = [&](auto&& f) {
    T s{};
    for (int c = 1; c <= 4; ++c) s += f(c);
    return s;
  };
  for (int a = 1; a <= 4; ++a) {
    for (int b = 1; b <= 4; ++b) {
      put(1, 5, a, b, -h * (dT(2, a, b) + dU(1, a, b)));
      put(1, 6, a, b, h * (dT(1, a, b) - dU(2, a, b)));
      put(3, 5, a, b, -h * (dT(4, a, b) + dU(3, a, b)));
      put(3, 6, a, b, h * (dT(3, a, b) - dU(4, a, b)));
    }
    T c15 = csum([&](int c) { return (T_(2, c) + U(1, c)) * T_(a, c); });
    T c15u = csum([&](int c) { return (T_(2, c) + U(1, c)) * U(a, c); });
    put(1, 5, a, 5,
        0.5 * (D(1, a) - T_(4, a)) +
            h2 * (c15 - (T_(1, a) - U(2, a)) * T_(1, 2) + (T_(4, a) + U(3, a)) * T_(1, 3) - (T_(3, a) - U(4, a)) * T_(1, 4)));
    put(1, 5, a, 6,
        0.5 * (T_(3, a) - D(2, a)) +
            h2 * (c15u - (T_(1, a) - U(2, a)) * U(1, 2) + (T_(4, a) + U(3, a)) * U(1, 3) - (T_(3, a) - U(4, a)) * U(1, 4)));
    T c16 = csum([&](int c) { return (T_(1, c) - U(2, c)) * T_(a, c); });
    T c16u = csum([&](int c) { return (T_(1, c) - U(2, c)) * U(a, c); });
    put(1, 6, a, 5,
        0.5 * (D(2, a) - U(4, a)) -
            h2 * (c16 + (T_(2, a) + U(1, a)) * T_(1, 2) + (T_(3, a) - U(4, a)) * T_(1, 3) + (T_(4, a) + U(3, a)) * T_(1, 4)));
    put(1, 6, a, 6,
        0.5 * (D(1, a) + U(3, a)) -
            h2 * (c16u + (T_(2, a) + U(1, a)) * U(1, 2) + (T_(3, a) - U(4, a)) * U(1, 3) + (T_(4, a) + U(3, a)) * U(1, 4)));
    T c35 = csum([&](int c) { return (T_(4, c) + U(3, c)) * T_(a, c); });
    T c35u = csum([&](int c) { return (T_(4, c) + U(3, c)) * U(a, c); });
    put(3, 5, a, 5,
        0.5 * (D(3, a) + T_(2, a)) +
            h2 * (c35 - (T_(2, a) + U(1, a)) * T_(1, 3) + (T_(1, a) - U(2, a)) * T_(2, 3) - (T_(3, a) - U(4, a)) * T_(3, 4)));
    put(3, 5, a, 6,
        -0.5 * (D(4, a) + T_(1, a)) +
            h2 * (c35u - (T_(2, a) + U(1, a)) * U(1, 3) + (T_(1, a) - U(2, a)) * U(2, 3) - (T_(3, a) - U(4, a)) * U(3, 4)));
    T c36 = csum([&](int c) { return (T_(3, c) - U(4, c)) * T_(a, c); });
    T c36u = csum([&](int c) { return (T_(3, c) - U(4, c)) * U(a, c); });
    put(3, 6, a, 5,
        0.5 * (D(4, a) + U(2, a)) -
            h2 * (c36 - (T_(1, a) - U(2, a)) * T_(1, 3) - (T_(2, a) + U(1, a)) * T_(2, 3) + (T_(4, a) + U(3, a)) * T_(3, 4)));
    put(3, 6, a, 6,
        0.5 * (D(3, a) - U(1, a)) -
            h2 * (c36u - (T_(1, a) - U(2, a)) * U(1, 3) - (T_(2, a) + U(1, a)) * U(2, 3) + (T_(4, a) + U(3, a)) * U(3, 4)));
  }
  for (int b = 1; b <= 4; ++b) {
    put(1, 5, 5, b, h * csum([&](int c) { return (Jd(1, c, 5) + Jd(1, 5, c)) * T_(c, b); }));
    put(1, 5, 6, b, h * csum([&](int c) { return Jd(1, c, 6) * T_(c, b) + Jd(1, 5, c) * U(c, b); }));
    put(1, 6, 5, b, h * csum([&](int c) { return Jd(1, 6, c) * T_(c, b) + Jd(1, c, 5) * U(c, b); }));
    put(1, 6, 6, b, h * csum([&](int c) { return (Jd(1, c, 6) + Jd(1, 6, c)) * U(c, b); }));
    put(3, 5, 5, b, h * csum([&](int c) { return (Jd(3, c, 5) + Jd(3, 5, c)) * T_(c, b); }));
    put(3, 5, 6, b, h * csum([&](int c) { return Jd(3, c, 6) * T_(c, b) + Jd(3, 5, c) * U(c, b); }));
    put(3, 6, 5, b, h * csum([&](int c) { return Jd(3, 6, c) * T_(c, b) + Jd(3, c, 5) * U(c, b); }));
    put(3, 6, 6, b, h * csum([&](int c) { return (Jd(3, c, 6) + Jd(3, 6, c)) * U(c, b); }));
  }
  // remaining rows from J·∇²J + ∇²J·J = −(∇_r J ∇_s J + ∇_s J ∇_r J)
  auto J = j_matrix(AcsSign::plus);
  const int alias[6][5] = {{4, 5, 3, 6, 1}, {4, 6, 3, 5, -1}, {2, 3, 1, 4, 1},
                           {2, 4, 1, 3, -1}, {2, 5, 1, 6, 1}, {2, 6, 1, 5, -1}};
  for (int r = 0; r < 6; ++r)
    for (int s = 0; s < 6; ++s) {
      Mat6<T> A, B, BA;
      for (int p = 0; p < 6; ++p)
        for (int q = 0; q < 6; ++q) {
          A(p, q) = NJ(p, q, r);
          B(p, q) = NJ(p, q, s);
        }
      auto S = matmul(B, A) + matmul(A, B);
      Mat6<T> Mc;
      for (int p = 0; p < 6; ++p)
        for (int q = 0; q < 6; ++q) {
          T x{};
          for (int u = 0; u < 6; ++u) x += J(p, u) * S(u, q);
          Mc(p, q) = 0.5 * x;
        }
      for (const auto& al : alias) {
        int p = al[0] - 1, q = al[1] - 1, pp = al[2] - 1, qq = al[3] - 1;
        T v = double(al[4]) * (H(pp, qq, r, s) - Mc(pp, qq)) + Mc(p, q);
        H(p, q, r, s) = v;
        H(q, p, r, s) = -v;
      }
    }
  return H;
}

// Δ_J J = ΔJ − J ∇_pJ ∇_pJ from the Hessian
template <class T>
Mat6<T> laplacian_j_generic(const CurvatureJet<T>& jet, double t) {
  auto H = hessian_j(jet, t);
  auto NJ = nabla_j(jet, t, AcsSign::plus).comps;
  auto J = j_matrix(AcsSign::plus);
  Mat6<T> L;
  for (int u = 0; u < 6; ++u)
    for (int v = 0; v < 6; ++v) {
      T x{};
      for (int r = 0; r < 6; ++r) x += H(u, v, r, r);
      for (int w = 0; w < 6; ++w) {
        if (J(u, w) == 0) continue;
        for (int q = 0; q < 6; ++q)
          for (int p = 0; p < 6; ++p) x -= J(u, w) * NJ(w, q, p) * NJ(q, v, p);
      }
      L(u, v) = x;
    }
  return L;
}

template <class T>
Mat6<T> laplacian_j(const CurvatureJet<T>& jet, double t) {
  require_t(t);
  auto q = q_tensors(jet);
  const double h = t / 2;
  T a = q.qt(0, 1) + q.qt(2, 3), b = q.qq(0, 1) + q.qq(2, 3);
  // N⁵₁₃ and N⁵₁₄ of J⁺
  T n13 = -t * (q.qt(0, 2) + q.qt(3, 1) - q.qq(0, 3) - q.qq(1, 2));
  T n14 = -t * (q.qt(0, 3) + q.qt(1, 2) + q.qq(0, 2) + q.qq(3, 1));
  auto div = [&](const T4<T, 3>& d, int i) {
    T s{};
    for (int c = 0; c < 4; ++c) s += d(i, c, c);
    return s;
  };
  Mat6<T> L;
  auto put = [&](int p, int r, const T& v) {
    L(p - 1, r - 1) = v;
    L(r - 1, p - 1) = -v;
  };
  put(1, 3, a + t / 4 * (n14 * b + n13 * a));
  put(2, 4, -L(0, 2));
  put(1, 4, b + t / 4 * (n14 * a - n13 * b));
  put(2, 3, L(0, 3));
  put(1, 5, -h * (div(q.dqt, 1) + div(q.dqq, 0)));
  put(2, 6, -L(0, 4));
  put(1, 6, h * (div(q.dqt, 0) - div(q.dqq, 1)));
  put(2, 5, L(0, 5));
  put(3, 5, -h * (div(q.dqt, 3) + div(q.dqq, 2)));
  put(4, 6, -L(2, 4));
  put(3, 6, h * (div(q.dqt, 2) - div(q.dqq, 3)));
  put(4, 5, L(2, 5));
  return L;
}

}  // namespace twistorlab
