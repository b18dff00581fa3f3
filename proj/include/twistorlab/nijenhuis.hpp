#pragma once

#include <array>
#include <map>
#include <optional>
#include <tuple>
#include <utility>

#include "acs.hpp"
#include "curvature4.hpp"
#include "errors.hpp"
#include "tensor.hpp"

namespace twistorlab {

// (p,t,q) = N^p_{tq}
template <class T>
struct NijenhuisTensor {
  T6<T, 3> comps{};
  AcsSign sign = AcsSign::plus;
};

template <class T>
struct SigmaGamma {
  T sigma{}, gamma{};
};

// (div1, div2): div1(p,q) = N^t_{pq,t}, div2(p,r) = N^r_{pt,t}
template <class T>
struct NijenhuisDivergence {
  Mat6<T> div1{}, div2{};
};

enum class NijMethod { tables, generic };

template <class T>
SigmaGamma<T> sigma_gamma(const CurvatureJet<T>& jet) {
  auto q = q_tensors(jet);
  T a = q.qt(0, 2) + q.qt(3, 1), b = q.qq(0, 3) + q.qq(1, 2);
  return {a + b, a - b};
}

// N^p_{tq} = J^r_t J^p_{r,q} − J^r_q J^p_{r,t} + J^s_q J^p_{t,s} − J^s_t J^p_{q,s}
template <class T>
T6<T, 3> nijenhuis_generic(const NablaJ<T>& nj) {
  auto J = j_matrix(nj.sign);
  const auto& N = nj.comps;
  T6<T, 3> out;
  for (int p = 0; p < 6; ++p)
    for (int t = 0; t < 6; ++t)
      for (int q = 0; q < 6; ++q) {
        T x{};
        for (int r = 0; r < 6; ++r)
          x += J(r, t) * N(p, r, q) - J(r, q) * N(p, r, t) + J(r, q) * N(p, t, r) - J(r, t) * N(p, q, r);
        out(p, t, q) = x;
      }
  return out;
}

template <class T>
NijenhuisTensor<T> nijenhuis(const CurvatureJet<T>& jet, double t, AcsSign sign, NijMethod method = NijMethod::tables) {
  require_t(t);
  NijenhuisTensor<T> out;
  out.sign = sign;
  if (method == NijMethod::generic) {
    out.comps = nijenhuis_generic(nabla_j(jet, t, sign));
    return out;
  }
  auto q = q_tensors(jet);
  const auto &qt = q.qt, &qq = q.qq;
  auto& N = out.comps;
  auto put = [&](int p, int r, int s, const T& v) {
    N(p - 1, r - 1, s - 1) = v;
    N(p - 1, s - 1, r - 1) = -v;
  };
  if (sign == AcsSign::plus) {
    T n13 = -t * (qt(0, 2) + qt(3, 1) - qq(0, 3) - qq(1, 2));
    T n14 = -t * (qt(0, 3) + qt(1, 2) + qq(0, 2) + qq(3, 1));
    put(5, 1, 3, n13);
    put(5, 2, 4, -n13);
    put(6, 1, 4, -n13);
    put(6, 2, 3, -n13);
    put(5, 1, 4, n14);
    put(5, 2, 3, n14);
    put(6, 1, 3, n14);
    put(6, 2, 4, -n14);
  } else {
    T n13 = -t * (qt(0, 2) + qt(3, 1) + qq(0, 3) + qq(1, 2));
    put(5, 1, 3, n13);
    put(5, 2, 4, -n13);
    put(6, 1, 4, n13);
    put(6, 2, 3, n13);
    const double v = -2 / t;
    put(1, 3, 5, T(v));
    put(3, 1, 5, T(-v));
    put(4, 1, 6, T(-v));
    put(4, 2, 5, T(v));
    put(3, 2, 6, T(-v));
    put(2, 3, 6, T(v));
    put(2, 4, 5, T(-v));
    put(1, 4, 6, T(v));
  }
  return out;
}

// 8t²(Γ² + (qt₁₄+qt₂₃+qq₁₃+qq₄₂)²)
template <class T>
T nijenhuis_norm2_closed(const CurvatureJet<T>& jet, double t) {
  auto q = q_tensors(jet);
  T g = sigma_gamma(jet).gamma;
  T u = q.qt(0, 3) + q.qt(1, 2) + q.qq(0, 2) + q.qq(3, 1);
  return 8 * t * t * (g * g + u * u);
}

namespace detail {

template <class T>
using Vec6 = std::array<T, 6>;

template <class T>
Vec6<T> neg(const Vec6<T>& v) {
  Vec6<T> o;
  for (int i = 0; i < 6; ++i) o[i] = -v[i];
  return o;
}

template <class T>
T6<T, 4> nabla_nij_plus(const CurvatureJet<T>& jet, double t) {
  auto qs = q_tensors(jet);
  auto T_ = [&](int i, int j) -> T { return qs.qt(i - 1, j - 1); };
  auto U = [&](int i, int j) -> T { return qs.qq(i - 1, j - 1); };
  auto dT = [&](int i, int j, int a) -> T { return qs.dqt(i - 1, j - 1, a - 1); };
  auto dU = [&](int i, int j, int a) -> T { return qs.dqq(i - 1, j - 1, a - 1); };
  auto N = nijenhuis(jet, t, AcsSign::plus).comps;
  T n13 = N(4, 0, 2), n14 = N(4, 0, 3);
  T6<T, 4> X;
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b)
      for (int p = 0; p < 6; ++p)
        for (int q = 0; q < 6; ++q) X(a - 1, p, q, b - 1) = -0.5 * t * (N(4, p, q) * T_(a, b) + N(5, p, q) * U(a, b));
  T s12 = T_(1, 2) + T_(3, 4), u12 = U(1, 2) + U(3, 4);
  auto A = [&](auto&& f, const T& v5, const T& v6) {
    Vec6<T> r;
    for (int a = 1; a <= 4; ++a) r[a - 1] = f(a);
    r[4] = v5;
    r[5] = v6;
    return r;
  };
  const T z{};
  std::map<std::pair<int, int>, Vec6<T>> v, w;
  v[{1, 2}] = Vec6<T>{z, z, z, z, -n14 * (1 / t - t / 2 * (T_(1, 3) + T_(4, 2))) + 0.25 * n13 * n14,
                      n13 * (1 / t - t / 2 * (U(1, 4) + U(2, 3))) - 0.25 * n14 * n14};
  v[{1, 3}] = A([&](int a) { return -t * ((dT(1, 3, a) + dT(4, 2, a)) - (dU(1, 4, a) + dU(2, 3, a))); },
                -t / 2 * n14 * s12 - 2.0 * u12, -t / 2 * n14 * u12 - 2.0 * s12);
  v[{1, 4}] = A([&](int a) { return -2 * t * (dT(1, 4, a) + dT(2, 3, a)); }, t / 2 * n13 * s12 + 2.0 * s12,
                t / 2 * n13 * u12 - 2.0 * u12);
  v[{1, 5}] = A([&](int a) { return t / 2 * (n13 * T_(3, a) + n14 * T_(4, a)); }, z, z);
  v[{1, 6}] = A([&](int a) { return t / 2 * (n13 * U(3, a) + n14 * U(4, a)); }, z, z);
  v[{2, 3}] = v[{1, 4}];
  v[{2, 4}] = neg(v[{1, 3}]);
  v[{2, 5}] = A([&](int a) { return t / 2 * (n14 * T_(3, a) - n13 * T_(4, a)); }, z, z);
  v[{2, 6}] = A([&](int a) { return t / 2 * (n14 * U(3, a) - n13 * U(4, a)); }, z, z);
  v[{3, 4}] = v[{1, 2}];
  v[{3, 5}] = A([&](int a) { return -t / 2 * (n13 * T_(1, a) + n14 * T_(2, a)); }, z, z);
  v[{3, 6}] = A([&](int a) { return -t / 2 * (n13 * U(1, a) + n14 * U(2, a)); }, z, z);
  v[{4, 5}] = A([&](int a) { return -t / 2 * (n14 * T_(1, a) - n13 * T_(2, a)); }, z, z);
  v[{4, 6}] = A([&](int a) { return -t / 2 * (n14 * U(1, a) - n13 * U(2, a)); }, z, z);
  v[{5, 6}] = Vec6<T>{};
  w[{1, 2}] = Vec6<T>{z, z, z, z, n13 * (1 / t - t / 2 * (T_(1, 3) + T_(4, 2))) + 0.25 * n14 * n14,
                      n14 * (1 / t - t / 2 * (U(1, 4) + U(2, 3))) + 0.25 * n13 * n14};
  w[{1, 3}] = v[{1, 4}];
  w[{1, 4}] = neg(v[{1, 3}]);
  w[{1, 5}] = v[{2, 5}];
  w[{1, 6}] = v[{2, 6}];
  w[{2, 3}] = neg(v[{1, 3}]);
  w[{2, 4}] = neg(v[{1, 4}]);
  w[{2, 5}] = neg(v[{1, 5}]);
  w[{2, 6}] = neg(v[{1, 6}]);
  w[{3, 4}] = w[{1, 2}];
  w[{3, 5}] = v[{4, 5}];
  w[{3, 6}] = v[{4, 6}];
  w[{4, 5}] = neg(v[{3, 5}]);
  w[{4, 6}] = neg(v[{3, 6}]);
  w[{5, 6}] = Vec6<T>{};
  for (auto* rows : {&v, &w}) {
    int p = rows == &v ? 4 : 5;
    for (const auto& [key, val] : *rows)
      for (int s = 0; s < 6; ++s) {
        X(p, key.first - 1, key.second - 1, s) = val[s];
        X(p, key.second - 1, key.first - 1, s) = -val[s];
      }
  }
  return X;
}

template <class T>
T6<T, 4> nabla_nij_minus(const CurvatureJet<T>& jet, double t) {
  auto qs = q_tensors(jet);
  auto T_ = [&](int i, int j) -> T { return qs.qt(i - 1, j - 1); };
  auto U = [&](int i, int j) -> T { return qs.qq(i - 1, j - 1); };
  const auto &dqt = qs.dqt, &dqq = qs.dqq;
  const double k = 2 / (t * t), h = t * t / 2;
  T S = T_(1, 3) + T_(4, 2) + U(1, 4) + U(2, 3);
  T c = S - k;
  auto dS = [&](int a) -> T { return dqt(0, 2, a - 1) + dqt(3, 1, a - 1) + dqq(0, 3, a - 1) + dqq(1, 2, a - 1); };
  T s12 = T_(1, 2) + T_(3, 4), u12 = U(1, 2) + U(3, 4);
  const T z{};
  auto A = [&](auto&& f, const T& v5 = T{}, const T& v6 = T{}) {
    Vec6<T> r;
    for (int a = 1; a <= 4; ++a) r[a - 1] = f(a);
    r[4] = v5;
    r[5] = v6;
    return r;
  };
  auto zero4 = [&](int) { return T{}; };
  const Vec6<T> Z{};
  std::map<std::tuple<int, int, int>, Vec6<T>> v;
  auto put = [&](int r, int p, int q, const Vec6<T>& x) { v[{r, p, q}] = x; };
  auto get = [&](int r, int p, int q) -> const Vec6<T>& {
    auto it = v.find({r, p, q});
    if (it == v.end())
      throw assembly_coverage("nabla_nijenhuis(-): entry " + std::to_string(r) + std::to_string(p) + std::to_string(q) +
                              " read before it was set");
    return it->second;
  };
  // upper index 1
  put(1, 1, 2, Z);
  put(1, 1, 3, A([&](int a) { return h * c * T_(1, a); }));
  put(1, 1, 4, A([&](int a) { return h * c * U(1, a); }));
  put(1, 1, 5, Z);
  put(1, 1, 6, Z);
  put(1, 2, 3, A([&](int a) { return h * (S * U(1, a) - k * T_(2, a)); }));
  put(1, 2, 4, A([&](int a) { return -h * (S * T_(1, a) + k * U(2, a)); }));
  put(1, 2, 5, A(zero4, T_(1, 4) + T_(2, 3), (U(1, 4) + U(2, 3)) - k));
  put(1, 2, 6, A(zero4, k - (T_(1, 3) + T_(4, 2)), -(U(1, 3) + U(4, 2))));
  put(1, 3, 4, A([&](int a) { return T_(4, a) - U(3, a); }));
  put(1, 3, 5, Z);
  put(1, 3, 6, A(zero4, s12, u12));
  put(1, 4, 5, neg(get(1, 3, 6)));
  put(1, 4, 6, Z);
  put(1, 5, 6, neg(get(1, 3, 4)));
  // upper index 2
  put(2, 1, 2, Z);
  put(2, 1, 3, A([&](int a) { return h * (S * T_(2, a) - k * U(1, a)); }));
  put(2, 1, 4, A([&](int a) { return h * (S * U(2, a) + k * T_(1, a)); }));
  put(2, 1, 5, neg(get(1, 2, 5)));
  put(2, 1, 6, neg(get(1, 2, 6)));
  put(2, 2, 3, A([&](int a) { return h * c * U(2, a); }));
  put(2, 2, 4, A([&](int a) { return -h * c * T_(2, a); }));
  put(2, 2, 5, Z);
  put(2, 2, 6, Z);
  put(2, 3, 4, A([&](int a) { return T_(3, a) + U(4, a); }));
  put(2, 3, 5, neg(get(1, 3, 6)));
  put(2, 4, 6, neg(get(1, 3, 6)));
  put(2, 3, 6, Z);
  put(2, 4, 5, Z);
  put(2, 5, 6, neg(get(2, 3, 4)));
  // upper index 3
  put(3, 1, 2, A([&](int a) { return U(1, a) - T_(2, a); }));
  put(3, 1, 3, A([&](int a) { return h * c * T_(3, a); }));
  put(3, 1, 4, A([&](int a) { return h * (S * U(3, a) - k * T_(4, a)); }));
  put(3, 1, 5, Z);
  put(3, 1, 6, neg(get(1, 3, 6)));
  put(3, 2, 3, A([&](int a) { return h * c * U(3, a); }));
  put(3, 2, 4, A([&](int a) { return -h * (S * T_(3, a) + k * U(4, a)); }));
  put(3, 2, 5, get(1, 3, 6));
  put(3, 2, 6, Z);
  put(3, 3, 4, Z);
  put(3, 3, 5, Z);
  put(3, 3, 6, Z);
  put(3, 4, 5, get(1, 2, 5));
  put(3, 4, 6, get(1, 2, 6));
  put(3, 5, 6, neg(get(3, 1, 2)));
  // upper index 4
  put(4, 1, 2, A([&](int a) { return -(T_(1, a) + U(2, a)); }));
  put(4, 1, 3, A([&](int a) { return h * (S * T_(4, a) - k * U(3, a)); }));
  put(4, 1, 4, A([&](int a) { return h * c * U(4, a); }));
  put(4, 1, 5, get(1, 3, 6));
  put(4, 1, 6, Z);
  put(4, 2, 3, A([&](int a) { return h * (S * U(4, a) + k * T_(3, a)); }));
  put(4, 2, 4, A([&](int a) { return -h * c * T_(4, a); }));
  put(4, 2, 5, Z);
  put(4, 2, 6, get(1, 3, 6));
  put(4, 3, 4, Z);
  put(4, 3, 5, neg(get(1, 2, 5)));
  put(4, 3, 6, neg(get(1, 2, 6)));
  put(4, 4, 5, Z);
  put(4, 4, 6, Z);
  put(4, 5, 6, neg(get(4, 1, 2)));
  // upper index 5
  put(5, 1, 2, A(zero4, h * S * (T_(1, 4) + T_(2, 3)), h * S * ((U(1, 4) + U(2, 3)) - k)));
  put(5, 1, 3, A([&](int a) { return -t * dS(a); }, 2.0 * u12, -2.0 * s12));
  put(5, 1, 4, A(zero4, -h * S * s12, -h * S * u12));
  put(5, 1, 5, neg(get(3, 1, 3)));
  put(5, 1, 6, neg(get(3, 1, 4)));
  put(5, 2, 3, get(5, 1, 4));
  put(5, 2, 4, neg(get(5, 1, 3)));
  put(5, 2, 5, neg(get(4, 2, 4)));
  put(5, 2, 6, get(4, 2, 3));
  put(5, 3, 4, get(5, 1, 2));
  put(5, 3, 5, get(1, 1, 3));
  put(5, 3, 6, get(1, 2, 3));
  put(5, 4, 5, get(2, 2, 4));
  put(5, 4, 6, neg(get(2, 1, 4)));
  put(5, 5, 6, Z);
  // upper index 6
  put(6, 1, 2, A(zero4, h * S * (k - (T_(1, 3) + T_(4, 2))), -h * S * (U(1, 3) + U(4, 2))));
  put(6, 1, 3, neg(get(5, 1, 4)));
  put(6, 1, 4, get(5, 1, 3));
  put(6, 2, 3, get(5, 1, 3));
  put(6, 2, 4, get(5, 1, 4));
  put(6, 1, 5, neg(get(4, 1, 3)));
  put(6, 1, 6, neg(get(4, 1, 4)));
  put(6, 2, 5, get(3, 2, 4));
  put(6, 2, 6, neg(get(3, 2, 3)));
  put(6, 3, 4, get(6, 1, 2));
  put(6, 3, 5, get(2, 1, 3));
  put(6, 3, 6, get(2, 2, 3));
  put(6, 4, 5, neg(get(1, 2, 4)));
  put(6, 4, 6, get(1, 1, 4));
  put(6, 5, 6, Z);
  (void)z;
  T6<T, 4> X;
  for (int r = 1; r <= 6; ++r)
    for (int p = 1; p <= 6; ++p)
      for (int q = p + 1; q <= 6; ++q) {
        const auto& val = get(r, p, q);
        for (int s = 0; s < 6; ++s) {
          X(r - 1, p - 1, q - 1, s) = val[s];
          X(r - 1, q - 1, p - 1, s) = -val[s];
        }
      }
  return X;
}

template <class T>
NijenhuisDivergence<T> div_nij_plus(const CurvatureJet<T>& jet, double t) {
  auto qs = q_tensors(jet);
  auto T_ = [&](int i, int j) -> T { return qs.qt(i - 1, j - 1); };
  auto U = [&](int i, int j) -> T { return qs.qq(i - 1, j - 1); };
  auto dT = [&](int i, int j, int a) -> T { return qs.dqt(i - 1, j - 1, a - 1); };
  auto dU = [&](int i, int j, int a) -> T { return qs.dqq(i - 1, j - 1, a - 1); };
  auto N = nijenhuis(jet, t, AcsSign::plus).comps;
  T n13 = N(4, 0, 2), n14 = N(4, 0, 3);
  T s12 = T_(1, 2) + T_(3, 4), u12 = U(1, 2) + U(3, 4);
  NijenhuisDivergence<T> out;
  auto& D1 = out.div1;
  auto& D2 = out.div2;
  auto p1 = [&](int p, int q, const T& v) {
    D1(p - 1, q - 1) = v;
    D1(q - 1, p - 1) = -v;
  };
  p1(1, 3, t / 2 * (u12 * (n13 - 8 / t) - n14 * s12));
  p1(2, 4, -D1(0, 2));
  p1(1, 4, t / 2 * (s12 * (n13 + 8 / t) + n14 * u12));
  p1(2, 3, D1(0, 3));
  auto p2 = [&](int r, int p, const T& v) { D2(p - 1, r - 1) = r < 5 ? t * v : v; };
  p2(1, 1, -0.5 * (n13 * (T_(1, 3) - U(1, 4)) + n14 * (T_(1, 4) + U(1, 3))));
  p2(1, 2, -0.5 * (n14 * (T_(1, 3) - U(1, 4)) - n13 * (T_(1, 4) + U(1, 3))));
  T v = 0.5 * (n14 * T_(1, 2) - n13 * U(1, 2));
  p2(1, 3, v);
  p2(2, 4, -v);
  v = -0.5 * (n13 * T_(1, 2) + n14 * U(1, 2));
  p2(1, 4, v);
  p2(2, 3, v);
  p2(2, 1, 0.5 * (n14 * (T_(4, 2) - U(2, 3)) - n13 * (T_(2, 3) + U(4, 2))));
  p2(2, 2, -0.5 * (n13 * (T_(4, 2) - U(2, 3)) + n14 * (T_(2, 3) + U(4, 2))));
  v = 0.5 * (n13 * U(3, 4) - n14 * T_(3, 4));
  p2(3, 1, v);
  p2(4, 2, -v);
  v = 0.5 * (n13 * T_(3, 4) + n14 * U(3, 4));
  p2(3, 2, v);
  p2(4, 1, v);
  p2(3, 3, -0.5 * (n13 * (T_(1, 3) - U(2, 3)) + n14 * (T_(2, 3) + U(1, 3))));
  p2(3, 4, -0.5 * (n14 * (T_(1, 3) - U(2, 3)) - n13 * (T_(2, 3) + U(1, 3))));
  p2(4, 3, 0.5 * (n14 * (T_(4, 2) - U(1, 4)) - n13 * (T_(1, 4) + U(4, 2))));
  p2(4, 4, -0.5 * (n13 * (T_(4, 2) - U(1, 4)) + n14 * (T_(1, 4) + U(4, 2))));
  auto G = [&](int a) { return dT(1, 3, a) + dT(4, 2, a) - dU(1, 4, a) - dU(2, 3, a); };
  auto K = [&](int a) { return dT(1, 4, a) + dT(2, 3, a); };
  v = -t * G(3) - 2 * t * K(4);
  p2(5, 1, v);
  p2(6, 2, -v);
  v = t * G(4) - 2 * t * K(3);
  p2(5, 2, v);
  p2(6, 1, v);
  v = t * G(1) + 2 * t * K(2);
  p2(5, 3, v);
  p2(6, 4, -v);
  v = -t * G(2) + 2 * t * K(1);
  p2(5, 4, v);
  p2(6, 3, v);
  T S = T_(1, 3) + T_(4, 2) + U(1, 4) + U(2, 3);
  p2(5, 5, t * (n13 * (T_(1, 3) + T_(4, 2)) + n14 * (T_(1, 4) + T_(2, 3))));
  p2(6, 5, t / 2 * n14 * S);
  p2(5, 6, t / 2 * n14 * S);
  p2(6, 6, t * (n14 * (U(1, 3) + U(4, 2)) - n13 * (U(1, 4) + U(2, 3))));
  return out;
}

template <class T>
NijenhuisDivergence<T> div_nij_minus(const CurvatureJet<T>& jet, double t) {
  auto qs = q_tensors(jet);
  auto T_ = [&](int i, int j) -> T { return qs.qt(i - 1, j - 1); };
  auto U = [&](int i, int j) -> T { return qs.qq(i - 1, j - 1); };
  const auto &dqt = qs.dqt, &dqq = qs.dqq;
  const double k = 2 / (t * t), h = t * t / 2;
  T S = T_(1, 3) + T_(4, 2) + U(1, 4) + U(2, 3);
  T c = S - k;
  auto dS = [&](int a) -> T { return dqt(0, 2, a - 1) + dqt(3, 1, a - 1) + dqq(0, 3, a - 1) + dqq(1, 2, a - 1); };
  T s12 = T_(1, 2) + T_(3, 4), u12 = U(1, 2) + U(3, 4);
  NijenhuisDivergence<T> out;
  auto& D1 = out.div1;
  auto& D2 = out.div2;
  auto p1 = [&](int p, int q, const T& v) {
    D1(p - 1, q - 1) = v;
    D1(q - 1, p - 1) = -v;
  };
  p1(1, 3, h * (S + k) * u12);
  p1(2, 4, -D1(0, 2));
  p1(1, 4, -h * (S + k) * s12);
  p1(2, 3, D1(0, 3));
  auto p2 = [&](int r, int p, const T& v) { D2(p - 1, r - 1) = v; };
  auto g = [&](int r, int p) -> T { return D2(p - 1, r - 1); };
  p2(1, 1, h * c * (T_(1, 3) + U(1, 4)));
  p2(1, 2, h * c * (U(1, 3) - T_(1, 4)));
  p2(1, 3, -h * c * U(1, 2));
  p2(1, 4, h * c * T_(1, 2));
  p2(2, 1, g(1, 2));
  p2(2, 2, h * c * (T_(4, 2) + U(2, 3)));
  p2(2, 3, g(1, 4));
  p2(2, 4, -g(1, 3));
  p2(3, 1, h * c * U(3, 4));
  p2(3, 2, -h * c * T_(3, 4));
  p2(3, 3, h * c * (T_(1, 3) + U(2, 3)));
  p2(3, 4, h * c * (U(1, 3) - T_(2, 3)));
  p2(4, 1, g(3, 2));
  p2(4, 2, -g(3, 1));
  p2(4, 3, g(3, 4));
  p2(4, 4, h * c * (T_(4, 2) + U(1, 4)));
  p2(5, 1, -t * dS(3));
  p2(5, 2, t * dS(4));
  p2(5, 3, t * dS(1));
  p2(5, 4, -t * dS(2));
  p2(5, 5, t * t * (k - S) * (T_(1, 3) + T_(4, 2)));
  p2(5, 6, t * t * (k - S) * (T_(1, 4) + T_(2, 3)));
  p2(6, 1, -g(5, 2));
  p2(6, 2, g(5, 1));
  p2(6, 3, -g(5, 4));
  p2(6, 4, g(5, 3));
  p2(6, 5, g(5, 6));
  p2(6, 6, t * t * (k - S) * (U(1, 4) + U(2, 3)));
  return out;
}

}  // namespace detail

// (p,t,q,s) = N^p_{tq,s}
template <class T>
T6<T, 4> nabla_nijenhuis(const CurvatureJet<T>& jet, double t, AcsSign sign) {
  require_t(t);
  return sign == AcsSign::plus ? detail::nabla_nij_plus(jet, t) : detail::nabla_nij_minus(jet, t);
}

template <class T>
NijenhuisDivergence<T> div_nijenhuis(const CurvatureJet<T>& jet, double t, AcsSign sign) {
  require_t(t);
  return sign == AcsSign::plus ? detail::div_nij_plus(jet, t) : detail::div_nij_minus(jet, t);
}

// both divergences as traces of a full ∇N table
template <class T>
NijenhuisDivergence<T> div_from_nabla(const T6<T, 4>& X) {
  NijenhuisDivergence<T> out;
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q)
      for (int s = 0; s < 6; ++s) {
        out.div1(p, q) += X(s, p, q, s);
        out.div2(p, q) += X(q, p, s, s);
      }
  return out;
}

}  // namespace twistorlab
