#pragma once

// Independent twistor geometry: structure equations of the orthonormal frame
// bundle, a coframe adapted to g_t, the Levi-Civita connection by Koszul, and
// derivatives along frame vectors by forward-mode dual numbers. Nothing here
// uses the component tables of the library.

#include <Eigen/Dense>
#include <array>
#include <type_traits>
#include <utility>

#include <twistorlab/tensor.hpp>

namespace oracle {

using twistorlab::Tensor;

template <class S>
struct Dual {
  S val{}, der{};
  Dual() = default;
  Dual(double x) : val(x) {}
  Dual(const S& x) requires(!std::is_same_v<S, double>) : val(x) {}
  Dual(const S& x, const S& d) : val(x), der(d) {}

  Dual& operator+=(const Dual& o) {
    val += o.val;
    der += o.der;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    val -= o.val;
    der -= o.der;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    der = der * o.val + val * o.der;
    val *= o.val;
    return *this;
  }
  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator-(const Dual& a) { return {-a.val, -a.der}; }
  friend Dual operator/(const Dual& a, double s) { return {a.val / s, a.der / s}; }
  friend bool operator!=(const Dual& a, double s) { return a.val != s || a.der != 0.0; }
};

template <class S>
struct Jet {
  Tensor<S, 4, 4> R{};
  Tensor<S, 4, 5> dR{};
  const Tensor<double, 4, 6>* d2 = nullptr;  // (a,b,c,d;e,f), never perturbed
};

inline constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

// connection-form slot of ω_ab and its sign relative to the stored pair
inline std::pair<int, int> om_index(int a, int b) {
  if (a == b) return {-1, 0};
  int lo = a < b ? a : b, hi = a < b ? b : a;
  for (int k = 0; k < 6; ++k)
    if (kPairs[k][0] == lo && kPairs[k][1] == hi) return {4 + k, a < b ? 1 : -1};
  return {-1, 0};
}

// F[I,J,K] = dθ^I(E_J, E_K) on the frame bundle, coframe θ^0..3, ω_pairs
template <class S>
Tensor<S, 10, 3> p_structure(const Tensor<S, 4, 4>& R) {
  Tensor<S, 10, 3> F;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      auto [I, s] = om_index(a, b);
      if (I < 0) continue;
      F(a, I, b) += -s;
      F(a, b, I) += s;
    }
  for (int k = 0; k < 6; ++k) {
    int a = kPairs[k][0], b = kPairs[k][1], I0 = 4 + k;
    for (int c = 0; c < 4; ++c) {
      auto [I1, s1] = om_index(a, c);
      auto [I2, s2] = om_index(c, b);
      if (I1 < 0 || I2 < 0) continue;
      F(I0, I1, I2) += -s1 * s2;
      F(I0, I2, I1) += s1 * s2;
    }
    for (int c = 0; c < 4; ++c)
      for (int d = 0; d < 4; ++d) F(I0, c, d) += R(a, b, c, d);
  }
  return F;
}

struct Twistor {
  double t;
  Tensor<double, 10, 2> B, Binv;

  explicit Twistor(double t_) : t(t_) {
    auto w = [](int a, int b) {
      std::array<double, 10> v{};
      auto [I, s] = om_index(a, b);
      v[I] = s;
      return v;
    };
    auto row = [&](int r, std::array<double, 10> x, std::array<double, 10> y, double c1, double c2) {
      for (int k = 0; k < 10; ++k) B(r, k) = c1 * x[k] + c2 * y[k];
    };
    for (int a = 0; a < 4; ++a) B(a, a) = 1;
    row(4, w(0, 2), w(3, 1), t, t);
    row(5, w(0, 3), w(1, 2), t, t);
    row(6, w(0, 1), w(2, 3), 1, 1);
    row(7, w(0, 1), w(2, 3), 1, -1);
    row(8, w(0, 2), w(3, 1), 1, -1);
    row(9, w(0, 3), w(1, 2), 1, -1);
    Eigen::Matrix<double, 10, 10> m;
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j) m(i, j) = B(i, j);
    Eigen::Matrix<double, 10, 10> mi = m.inverse();
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j) Binv(i, j) = mi(i, j);
  }

  // E_I as (horizontal part, so(4) generator)
  void vec_gen(int I, std::array<double, 4>& h, Tensor<double, 4, 2>& g) const {
    g = {};
    for (int a = 0; a < 4; ++a) h[a] = Binv(a, I);
    for (int k = 0; k < 6; ++k) {
      g(kPairs[k][0], kPairs[k][1]) = Binv(4 + k, I);
      g(kPairs[k][1], kPairs[k][0]) = -Binv(4 + k, I);
    }
  }

  template <class S>
  Tensor<S, 10, 3> f_new(const Tensor<S, 4, 4>& R) const {
    auto F = p_structure(R);
    Tensor<S, 10, 3> a, b, c;
    for (int I = 0; I < 10; ++I)
      for (int i = 0; i < 10; ++i)
        if (B(I, i) != 0)
          for (int jk = 0; jk < 100; ++jk) a.v[I * 100 + jk] += B(I, i) * F.v[i * 100 + jk];
    for (int I = 0; I < 10; ++I)
      for (int J = 0; J < 10; ++J)
        for (int j = 0; j < 10; ++j)
          if (Binv(j, J) != 0)
            for (int k = 0; k < 10; ++k) b(I, J, k) += a(I, j, k) * Binv(j, J);
    for (int I = 0; I < 10; ++I)
      for (int J = 0; J < 10; ++J)
        for (int K = 0; K < 10; ++K)
          for (int k = 0; k < 10; ++k)
            if (Binv(k, K) != 0) c(I, J, K) += b(I, J, k) * Binv(k, K);
    return c;
  }

  // C[p,q,I] = θ^p_q(E_I), p,q < 6; I < 6 is Levi-Civita, I >= 6 the fibre part
  template <class S>
  std::pair<Tensor<S, 10, 3>, Tensor<S, 10, 3>> connection(const Tensor<S, 4, 4>& R) const {
    auto F = f_new(R);
    Tensor<S, 10, 3> C;
    for (int p = 0; p < 6; ++p)
      for (int q = 0; q < 6; ++q)
        for (int r = 0; r < 6; ++r) C(p, q, r) = (F(p, r, q) + F(q, p, r) + F(r, p, q)) * -0.5;
    for (int p = 0; p < 6; ++p)
      for (int q = 0; q < 6; ++q)
        for (int a = 6; a < 10; ++a) C(p, q, a) = -F(p, a, q);
    return {F, C};
  }
};

template <class S, int R>
Tensor<S, 4, R> rot_action(const Tensor<S, 4, R>& T, const Tensor<double, 4, 2>& g) {
  Tensor<S, 4, R> out;
  for (int slot = 0; slot < R; ++slot) {
    int stride = twistorlab::ipow(4, R - 1 - slot);
    for (int k = 0; k < T.size; ++k) {
      int i = (k / stride) % 4;
      int base = k - i * stride;
      for (int x = 0; x < 4; ++x)
        if (g(x, i) != 0) out.v[k] += T.v[base + x * stride] * g(x, i);
    }
  }
  return out;
}

template <class S>
std::pair<Tensor<S, 4, 4>, Tensor<S, 4, 5>> dr_along(const Twistor& tw, const Jet<S>& j, int I) {
  std::array<double, 4> h;
  Tensor<double, 4, 2> g;
  tw.vec_gen(I, h, g);
  auto oR = rot_action(j.R, g);
  for (int k = 0; k < 256; ++k)
    for (int e = 0; e < 4; ++e)
      if (h[e] != 0) oR.v[k] += j.dR.v[k * 4 + e] * h[e];
  auto odR = rot_action(j.dR, g);
  if (j.d2)
    for (int k = 0; k < 1024; ++k)
      for (int f = 0; f < 4; ++f)
        if (h[f] != 0) odR.v[k] += (*j.d2).v[k * 4 + f] * h[f];
  return {oR, odR};
}

// d/dε fun(jet moved along E_I)
template <class S, class F>
auto deriv(const Twistor& tw, const Jet<S>& j, int I, F&& fun) {
  auto [dr, ddr] = dr_along(tw, j, I);
  Jet<Dual<S>> jd;
  for (int k = 0; k < 256; ++k) jd.R.v[k] = Dual<S>(j.R.v[k], dr.v[k]);
  for (int k = 0; k < 1024; ++k) jd.dR.v[k] = Dual<S>(j.dR.v[k], ddr.v[k]);
  jd.d2 = j.d2;
  auto out = fun(jd);
  using Out = decltype(out);
  Tensor<S, Out::dim, Out::rank> res;
  for (int k = 0; k < Out::size; ++k) res.v[k] = out.v[k].der;
  return res;
}

template <class S>
Tensor<S, 6, 3> levi_civita(const Twistor& tw, const Tensor<S, 4, 4>& R) {
  auto C = tw.connection(R).second;
  Tensor<S, 6, 3> G;
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q)
      for (int r = 0; r < 6; ++r) G(p, q, r) = C(p, q, r);
  return G;
}

// R̄[p,q,r,s] = Ω^p_q(E_r, E_s)
template <class S>
Tensor<S, 6, 4> curvature(const Twistor& tw, const Jet<S>& j) {
  auto [F, C] = tw.connection(j.R);
  std::array<Tensor<S, 10, 3>, 10> dC;
  for (int I = 0; I < 10; ++I)
    dC[I] = deriv(tw, j, I, [&](const auto& jd) { return tw.connection(jd.R).second; });
  Tensor<S, 6, 4> Rb;
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q)
      for (int r = 0; r < 6; ++r)
        for (int s = 0; s < 6; ++s) {
          S x = dC[r](p, q, s) - dC[s](p, q, r);
          for (int I = 0; I < 10; ++I) x += C(p, q, I) * F(I, r, s);
          for (int y = 0; y < 6; ++y) x += C(p, y, r) * C(y, q, s) - C(p, y, s) * C(y, q, r);
          Rb(p, q, r, s) = x;
        }
  return Rb;
}

template <class S>
Tensor<S, 6, 2> ricci(const Tensor<S, 6, 4>& Rb) {
  Tensor<S, 6, 2> out;
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q)
      for (int r = 0; r < 6; ++r) out(q, r) += Rb(p, q, p, r);
  return out;
}

// ∇X with the derivative slot last
template <class S, class F>
auto cov_deriv(const Twistor& tw, const Jet<S>& j, F&& fun) {
  auto T0 = fun(j);
  using Out = decltype(T0);
  constexpr int R = Out::rank;
  auto G = levi_civita(tw, j.R);
  Tensor<S, 6, R + 1> out;
  for (int s = 0; s < 6; ++s) {
    auto v = deriv(tw, j, s, fun);
    for (int slot = 0; slot < R; ++slot) {
      int stride = twistorlab::ipow(6, R - 1 - slot);
      for (int k = 0; k < Out::size; ++k) {
        int i = (k / stride) % 6;
        int base = k - i * stride;
        for (int x = 0; x < 6; ++x) v.v[k] -= T0.v[base + x * stride] * G(x, i, s);
      }
    }
    for (int k = 0; k < Out::size; ++k) out.v[k * 6 + s] = v.v[k];
  }
  return out;
}

inline Tensor<double, 6, 2> jmat(int sign) {
  Tensor<double, 6, 2> J;
  J(1, 0) = 1;
  J(0, 1) = -1;
  J(3, 2) = 1;
  J(2, 3) = -1;
  J(5, 4) = sign;
  J(4, 5) = -sign;
  return J;
}

// ∇_s J as (p,q,s) = J^p_{q,s}
template <class S>
Tensor<S, 6, 3> nabla_j(const Twistor& tw, const Tensor<S, 4, 4>& R, int sign) {
  auto G = levi_civita(tw, R);
  auto J = jmat(sign);
  Tensor<S, 6, 3> out;
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q)
      for (int s = 0; s < 6; ++s)
        for (int x = 0; x < 6; ++x) out(p, q, s) += G(p, x, s) * J(x, q) - G(x, q, s) * J(p, x);
  return out;
}

// N^p_{tq} from J and ∇J
template <class S>
Tensor<S, 6, 3> nijenhuis(const Tensor<S, 6, 3>& NJ, int sign) {
  auto J = jmat(sign);
  Tensor<S, 6, 3> N;
  for (int p = 0; p < 6; ++p)
    for (int t = 0; t < 6; ++t)
      for (int q = 0; q < 6; ++q)
        for (int r = 0; r < 6; ++r)
          N(p, t, q) += J(r, t) * NJ(p, r, q) - J(r, q) * NJ(p, r, t) + J(r, q) * NJ(p, t, r) - J(r, t) * NJ(p, q, r);
  return N;
}

}  // namespace oracle
