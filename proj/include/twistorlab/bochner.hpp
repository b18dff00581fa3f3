#pragma once

#include <array>

#include "acs.hpp"
#include "errors.hpp"
#include "tensor.hpp"
#include "twistor_tensors.hpp"

namespace twistorlab {

template <class T, int D = 6>
struct BochnerTensor {
  Tensor<T, D, 4> b{};
  int n = D / 2;
};

namespace detail {

// the bracket and the g-J block of the Bochner formula, linear in Ric and S
template <class T, int D>
Tensor<T, D, 4> bochner_correction(const Tensor<T, D, 2>& Ric, const T& S, const Tensor<double, D, 2>& J, int n) {
  Tensor<T, D, 4> out;
  auto dl = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  // JR(q,r) = Σ_t J[t,r] Ric[q,t]
  Tensor<T, D, 2> JR;
  for (int q = 0; q < D; ++q)
    for (int r = 0; r < D; ++r)
      for (int t = 0; t < D; ++t)
        if (J(t, r) != 0) JR(q, r) += J(t, r) * Ric(q, t);
  const double c1 = 1.0 / (2 * (n + 2));
  const double c2 = 1.0 / (4 * (n + 1) * (n + 2));
  for (int p = 0; p < D; ++p)
    for (int q = 0; q < D; ++q)
      for (int r = 0; r < D; ++r)
        for (int s = 0; s < D; ++s) {
          T t1 = dl(p, s) * Ric(q, r) - dl(p, r) * Ric(q, s) + dl(q, r) * Ric(p, s) - dl(q, s) * Ric(p, r);
          T t2 = J(p, s) * JR(q, r) - J(p, r) * JR(q, s) - 2 * J(p, q) * JR(r, s);
          T t3 = J(q, r) * JR(p, s) - J(q, s) * JR(p, r) - 2 * J(r, s) * JR(p, q);
          double t4 = dl(p, s) * dl(q, r) - dl(p, r) * dl(q, s) + J(p, s) * J(q, r) - J(p, r) * J(q, s) -
                      2 * J(p, q) * J(r, s);
          out(p, q, r, s) = c1 * (t1 + t2 + t3) - c2 * t4 * S;
        }
  return out;
}

}  // namespace detail

// J[p,s] = J^p_s as in j_matrix
template <class T, int D>
BochnerTensor<T, D> bochner_tensor(const Tensor<T, D, 4>& rbar, const Tensor<T, D, 2>& ricbar, const T& sbar,
                                   const Tensor<double, D, 2>& J, int n) {
  if (n < 2 || 2 * n != D) throw parameter_error("bochner_tensor: n must be >= 2 and equal half the dimension");
  return {rbar + detail::bochner_correction(ricbar, sbar, J, n), n};
}

template <class T>
BochnerTensor<T, 6> bochner_ke(const Riemann4<T>& R, double t) {
  detail::require_ke(R, t, "bochner_ke");
  BochnerTensor<T, 6> out;
  const double k = 1 / (t * t);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d)
          out.b(a, b, c, d) = R(a, b, c, d) - k * ((a == c) * (b == d) - (a == d) * (b == c));
  return out;
}

// product rule on the Bochner formula; last slot is the derivative direction
template <class T, int D>
Tensor<T, D, 5> nabla_bochner(const Tensor<T, D, 5>& drbar, const Tensor<T, D, 2>& ricbar,
                              const Tensor<T, D, 3>& dricbar, const T& sbar, const std::array<T, D>& dsbar,
                              const Tensor<double, D, 2>& J, const Tensor<T, D, 3>& dJ, int n) {
  if (n < 2 || 2 * n != D) throw parameter_error("nabla_bochner: n must be >= 2 and equal half the dimension");
  Tensor<T, D, 5> out = drbar;
  const double c1 = 1.0 / (2 * (n + 2));
  const double c2 = 1.0 / (4 * (n + 1) * (n + 2));
  auto dl = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  for (int u = 0; u < D; ++u) {
    Tensor<T, D, 2> Jt, dJu, dRic;
    for (int p = 0; p < D; ++p)
      for (int q = 0; q < D; ++q) {
        Jt(p, q) = T(J(p, q));
        dJu(p, q) = dJ(p, q, u);
        dRic(p, q) = dricbar(p, q, u);
      }
    // terms of the form J J Ric, differentiated factor by factor
    auto jjr = [&](const Tensor<T, D, 2>& A, const Tensor<T, D, 2>& B, const Tensor<T, D, 2>& C) {
      Tensor<T, D, 2> BR;  // BR(q,r) = Σ_t B[t,r] C[q,t]
      for (int q = 0; q < D; ++q)
        for (int r = 0; r < D; ++r)
          for (int t = 0; t < D; ++t) BR(q, r) += B(t, r) * C(q, t);
      Tensor<T, D, 4> o;
      for (int p = 0; p < D; ++p)
        for (int q = 0; q < D; ++q)
          for (int r = 0; r < D; ++r)
            for (int s = 0; s < D; ++s)
              o(p, q, r, s) = A(p, s) * BR(q, r) - A(p, r) * BR(q, s) - 2 * A(p, q) * BR(r, s) + A(q, r) * BR(p, s) -
                              A(q, s) * BR(p, r) - 2 * A(r, s) * BR(p, q);
      return o;
    };
    auto d2 = jjr(dJu, Jt, ricbar) + jjr(Jt, dJu, ricbar) + jjr(Jt, Jt, dRic);
    for (int p = 0; p < D; ++p)
      for (int q = 0; q < D; ++q)
        for (int r = 0; r < D; ++r)
          for (int s = 0; s < D; ++s) {
            T t1 = dl(p, s) * dRic(q, r) - dl(p, r) * dRic(q, s) + dl(q, r) * dRic(p, s) - dl(q, s) * dRic(p, r);
            T jj = J(p, s) * J(q, r) - J(p, r) * J(q, s) - 2 * J(p, q) * J(r, s);
            T djj = dJu(p, s) * J(q, r) + J(p, s) * dJu(q, r) - dJu(p, r) * J(q, s) - J(p, r) * dJu(q, s) -
                    2.0 * (dJu(p, q) * J(r, s) + J(p, q) * dJu(r, s));
            T t4 = dl(p, s) * dl(q, r) - dl(p, r) * dl(q, s) + jj;
            out(p, q, r, s, u) += c1 * (t1 + d2(p, q, r, s)) - c2 * (dsbar[u] * t4 + sbar * djj);
          }
  }
  return out;
}

template <class T>
T6<T, 5> nabla_bochner_ke(const CurvatureJet<T>& jet, double t) {
  auto dR = ke_nabla_riemann(jet, t);
  auto nr = twistor_nabla_ricci(jet, t);
  auto nj = nabla_j(jet, t, AcsSign::plus);
  return nabla_bochner<T, 6>(dR, twistor_ricci(jet, t), nr.nabla_ricbar, twistor_scalar(jet, t), nr.nabla_sbar,
                             j_matrix(AcsSign::plus), nj.comps, 3);
}

template <class T, int D>
double ricci_complex_linear_residual(const Tensor<T, D, 2>& ric, const Tensor<double, D, 2>& J) {
  double m = 0;
  for (int p = 0; p < D; ++p)
    for (int q = 0; q < D; ++q) {
      T x{};
      for (int t = 0; t < D; ++t) x += ric(p, t) * J(t, q) + ric(q, t) * J(t, p);
      m = std::fmax(m, std::fabs(value(x)));
    }
  return m;
}

template <class T, int D>
double kahler_identity_residual(const Tensor<T, D, 4>& R, const Tensor<double, D, 2>& J) {
  double m = 0;
  for (int p = 0; p < D; ++p)
    for (int q = 0; q < D; ++q)
      for (int r = 0; r < D; ++r)
        for (int s = 0; s < D; ++s) {
          T x{};
          for (int t = 0; t < D; ++t) x += R(p, q, t, s) * J(t, r) + R(p, q, r, t) * J(t, s);
          m = std::fmax(m, std::fabs(value(x)));
        }
  return m;
}

template <class T, int D>
double rk_identity_residual(const Tensor<T, D, 4>& R, const Tensor<double, D, 2>& J) {
  // contract one slot at a time: X_{..p..} = Σ_t J[t,p] X_{..t..}
  Tensor<T, D, 4> cur = R;
  for (int slot = 0; slot < 4; ++slot) {
    Tensor<T, D, 4> nxt;
    int stride = ipow(D, 3 - slot);
    for (int k = 0; k < cur.size; ++k) {
      int i = (k / stride) % D;
      int base = k - i * stride;
      T s{};
      for (int t = 0; t < D; ++t)
        if (J(t, i) != 0) s += J(t, i) * cur.v[base + t * stride];
      nxt.v[k] = s;
    }
    cur = nxt;
  }
  return max_abs_diff(R, cur);
}

// Riemann-type symmetries: both antisymmetries, pair symmetry, first Bianchi
template <class T, int D>
double riemann_type_residual(const Tensor<T, D, 4>& B) {
  double m = 0;
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      for (int c = 0; c < D; ++c)
        for (int d = 0; d < D; ++d) {
          const T& x = B(a, b, c, d);
          m = std::fmax(m, std::fabs(value(x + B(b, a, c, d))));
          m = std::fmax(m, std::fabs(value(x + B(a, b, d, c))));
          m = std::fmax(m, std::fabs(value(x - B(c, d, a, b))));
          m = std::fmax(m, std::fabs(value(x + B(a, c, d, b) + B(a, d, b, c))));
        }
  return m;
}

}  // namespace twistorlab
