#pragma once

#include <array>
#include <functional>

#include "assembly.hpp"
#include "curvature4.hpp"
#include "errors.hpp"
#include "tensor.hpp"

namespace twistorlab {

// Indices 0..3 horizontal, 4 and 5 the two vertical directions (e5, e6).
template <class T>
struct TwistorCurvature {
  double t = 1;
  T6<T, 4> rbar{};
  Mat6<T> ricbar{};
  T sbar{};
  T6<T, 4> wbar{};
  double conflict = 0;  // largest disagreement between over-determined table entries
  bool homogeneous_only = false;
};

template <class T>
struct TwistorDerivatives {
  T6<T, 3> nabla_ricbar{};  // (p,q,s) = R̄_pq,s
  std::array<T, 6> nabla_sbar{};
  bool homogeneous_only = false;
};

namespace detail {

template <class T>
T frob(const Mat4<T>& a, const Mat4<T>& b) { return dot(a, b); }

template <class T>
Mat4<T> mmT(const Mat4<T>& a, const Mat4<T>& b) { return matmul(a, transpose(b)); }

template <class T>
std::array<T, 4> divergence(const T4<T, 3>& d) {
  std::array<T, 4> v{};
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 4; ++c) v[a] += d(a, c, c);
  return v;
}

template <class T>
T horizontal_rbar(const Riemann4<T>& R, const QTensors<T>& q, double t, int a, int b, int c, int d) {
  const auto &qt = q.qt, &qq = q.qq;
  return R(a, b, c, d) -
         t * t / 4 * (qt(a, c) * qt(b, d) - qt(a, d) * qt(b, c) + qq(a, c) * qq(b, d) - qq(a, d) * qq(b, c)) -
         t * t / 2 * (qt(a, b) * qt(c, d) + qq(a, b) * qq(c, d));
}

template <class T>
Assembler<T, 6, 4> assemble_rbar(const CurvatureJet<T>& jet, double t) {
  require_t(t);
  auto q = q_tensors(jet);
  const auto &qd = q.qd, &qt = q.qt, &qq = q.qq;
  Assembler<T, 6, 4> as("rbar");
  as.zero_diagonal(0, 1);
  as.zero_diagonal(2, 3);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) put_riem(as, a, b, c, d, horizontal_rbar(jet.R, q, t, a, b, c, d));
  auto ab56 = qd - (mmT(qt, qq) - mmT(qq, qt)) * (t * t / 4);
  auto r5ab5 = mmT(qt, qt) * (-t * t / 4);
  auto r5ab6 = qd * -0.5 - mmT(qq, qt) * (t * t / 4);
  auto r6ab6 = mmT(qq, qq) * (-t * t / 4);
  auto r6ab5 = qd * 0.5 - mmT(qt, qq) * (t * t / 4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      put_riem(as, a, b, 4, 5, ab56(a, b));
      put_riem(as, 4, a, b, 4, r5ab5(a, b));
      put_riem(as, 4, a, b, 5, r5ab6(a, b));
      put_riem(as, 5, a, b, 5, r6ab6(a, b));
      put_riem(as, 5, a, b, 4, r6ab5(a, b));
      for (int c = 0; c < 4; ++c) {
        put_riem(as, a, b, c, 4, T(-t / 2) * q.dqt(a, b, c));
        put_riem(as, a, b, c, 5, T(-t / 2) * q.dqq(a, b, c));
      }
    }
  put_riem(as, 4, 5, 4, 5, T(1 / (t * t)));
  for (int a = 0; a < 4; ++a) {
    put_riem(as, 4, 5, 4, a, T(0));
    put_riem(as, 4, 5, a, 5, T(0));
  }
  return as;
}

template <class T>
Assembler<T, 6, 4> assemble_wbar(const CurvatureJet<T>& jet, double t) {
  require_t(t);
  auto q = q_tensors(jet);
  const auto &qd = q.qd, &qt = q.qt, &qq = q.qq;
  auto Ric = ricci(jet.R);
  T S = trace(Ric);
  T nt = frob(qt, qt), nq = frob(qq, qq), tq = frob(qt, qq);
  T Sb = S + 2 / (t * t) - t * t / 4 * (nt + nq);
  auto Rh = Ric - (mmT(qt, qt) + mmT(qq, qq)) * (t * t / 2);
  auto dl = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  Assembler<T, 6, 4> as("wbar");
  as.zero_diagonal(0, 1);
  as.zero_diagonal(2, 3);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          T h = horizontal_rbar(jet.R, q, t, a, b, c, d) -
                0.25 * (Rh(a, c) * dl(b, d) - Rh(b, c) * dl(a, d) + Rh(b, d) * dl(a, c) - Rh(a, d) * dl(b, c)) +
                Sb / 20.0 * (dl(a, c) * dl(b, d) - dl(a, d) * dl(b, c));
          put_riem(as, a, b, c, d, h);
        }
  auto divt = divergence(q.dqt), divq = divergence(q.dqq);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        put_riem(as, a, b, c, 4, T(-t / 2) * (q.dqt(a, b, c) + 0.25 * divt[b] * dl(a, c) - 0.25 * divt[a] * dl(b, c)));
        put_riem(as, a, b, c, 5, T(-t / 2) * (q.dqq(a, b, c) + 0.25 * divq[b] * dl(a, c) - 0.25 * divq[a] * dl(b, c)));
      }
  for (int a = 0; a < 4; ++a) {
    put_riem(as, 4, 5, a, 4, T(t / 8) * divq[a]);
    put_riem(as, 4, 5, a, 5, T(-t / 8) * divt[a]);
  }
  auto ab56 = qd - (mmT(qt, qq) - mmT(qq, qt)) * (t * t / 4);
  auto I = identity<T, 4>();
  auto w5ab6 = qd * -0.5 - mmT(qq, qt) * (t * t / 4) + I * (t * t / 16 * tq);
  auto w5ab5 = Ric * 0.25 - mmT(qt, qt) * (3.0 / 8 * t * t) - mmT(qq, qq) * (t * t / 8) +
               I * (3 / (20 * t * t) + 3.0 / 40 * t * t * nt + t * t / 80 * nq - S / 20.0);
  auto w6ab6 = Ric * 0.25 - mmT(qq, qq) * (3.0 / 8 * t * t) - mmT(qt, qt) * (t * t / 8) +
               I * (3 / (20 * t * t) + 3.0 / 40 * t * t * nq + t * t / 80 * nt - S / 20.0);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      put_riem(as, a, b, 4, 5, ab56(a, b));
      put_riem(as, 4, a, b, 5, w5ab6(a, b));
      put_riem(as, 4, a, b, 4, w5ab5(a, b));
      put_riem(as, 5, a, b, 5, w6ab6(a, b));
    }
  put_riem(as, 4, 5, 4, 5, 3 / (5 * t * t) + S / 20.0 - 3.0 / 40 * t * t * (nt + nq));
  return as;
}

template <class T>
void sym_put(Assembler<T, 6, 3>& as, int i, int j, int k, const T& x) {
  as.raw(x, i, j, k);
  as.raw(x, j, i, k);
}

template <class T>
void sym_put(Assembler<T, 6, 2>& as, int i, int j, const T& x) {
  as.raw(x, i, j);
  as.raw(x, j, i);
}

}  // namespace detail

template <class T>
T6<T, 4> twistor_riemann(const CurvatureJet<T>& jet, double t) { return detail::assemble_rbar(jet, t).finish(); }

template <class T>
Mat6<T> twistor_ricci(const CurvatureJet<T>& jet, double t) {
  require_t(t);
  auto q = q_tensors(jet);
  const auto &qt = q.qt, &qq = q.qq;
  Assembler<T, 6, 2> as("ricbar");
  auto h = ricci(jet.R) - (detail::mmT(qt, qt) + detail::mmT(qq, qq)) * (t * t / 2);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) as.raw(h(a, b), a, b);
  auto divt = detail::divergence(q.dqt), divq = detail::divergence(q.dqq);
  for (int a = 0; a < 4; ++a) {
    detail::sym_put(as, a, 4, T(t / 2) * divt[a]);
    detail::sym_put(as, a, 5, T(t / 2) * divq[a]);
  }
  as.raw(1 / (t * t) + t * t / 4 * detail::frob(qt, qt), 4, 4);
  as.raw(1 / (t * t) + t * t / 4 * detail::frob(qq, qq), 5, 5);
  detail::sym_put(as, 4, 5, t * t / 4 * detail::frob(qt, qq));
  return as.finish();
}

template <class T>
T twistor_scalar(const CurvatureJet<T>& jet, double t) {
  require_t(t);
  auto q = q_tensors(jet);
  return scalar(jet.R) + 2 / (t * t) - t * t / 4 * (detail::frob(q.qt, q.qt) + detail::frob(q.qq, q.qq));
}

template <class T>
T6<T, 4> twistor_weyl(const CurvatureJet<T>& jet, double t) { return detail::assemble_wbar(jet, t).finish(); }

template <class T>
TwistorCurvature<T> twistor_curvature(const CurvatureJet<T>& jet, double t) {
  auto r = detail::assemble_rbar(jet, t);
  auto w = detail::assemble_wbar(jet, t);
  TwistorCurvature<T> out;
  out.t = t;
  out.rbar = r.finish();
  out.wbar = w.finish();
  out.ricbar = twistor_ricci(jet, t);
  out.sbar = twistor_scalar(jet, t);
  out.conflict = std::fmax(r.conflict(), w.conflict());
  out.homogeneous_only = !jet.dR.has_value();
  return out;
}

template <class T>
TwistorDerivatives<T> twistor_nabla_ricci(const CurvatureJet<T>& jet, double t) {
  require_t(t);
  auto q = q_tensors(jet);
  const auto &qd = q.qd, &qt = q.qt, &qq = q.qq;
  const auto &dqd = q.dqd, &dqt = q.dqt, &dqq = q.dqq;
  using detail::frob;
  using detail::mmT;
  auto Ric = ricci(jet.R);
  T4<T, 3> dRic;
  if (jet.dR)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int e = 0; e < 4; ++e)
          for (int c = 0; c < 4; ++c) dRic(a, b, e) += (*jet.dR)(c, a, c, b, e);
  auto divt = detail::divergence(dqt), divq = detail::divergence(dqq), divd = detail::divergence(dqd);
  T nt = frob(qt, qt), nq = frob(qq, qq), tq = frob(qt, qq);
  double t2 = t * t;

  Assembler<T, 6, 3> as("nabla_ricbar");
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        T x = dRic(a, b, c);
        for (int d = 0; d < 4; ++d)
          x -= t2 / 2 * (dqt(a, d, c) * qt(b, d) + dqt(b, d, c) * qt(a, d) + dqq(a, d, c) * qq(b, d) + dqq(b, d, c) * qq(a, d));
        x -= t2 / 4 * (divt[a] * qt(b, c) + divt[b] * qt(a, c) + divq[a] * qq(b, c) + divq[b] * qq(a, c));
        as.raw(x, a, b, c);
      }
  auto M = mmT(qt, qt) + mmT(qq, qq);
  auto qtM = matmul(qt, M), qqM = matmul(qq, M);
  auto x5 = (mmT(qd, qq) + mmT(qq, qd)) * (t / 2) - (mmT(Ric, qt) + mmT(qt, Ric)) * (t / 2) + (qtM + transpose(qtM)) * (t * t2 / 4);
  auto x6 = (mmT(qd, qt) + mmT(qt, qd)) * (-t / 2) - (mmT(Ric, qq) + mmT(qq, Ric)) * (t / 2) + (qqM + transpose(qqM)) * (t * t2 / 4);
  auto Rh = Ric - M * (t2 / 2);
  auto a5b = q.q2t * (t / 2) - (qt * (t2 / 4 * nt + 1 / t2) + qq * (t2 / 4 * tq)) * (t / 2) + matmul(Rh, qt) * (t / 2);
  auto a6b = q.q2q * (t / 2) - (qq * (t2 / 4 * nq + 1 / t2) + qt * (t2 / 4 * tq)) * (t / 2) + matmul(Rh, qq) * (t / 2);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      as.raw(x5(a, b), a, b, 4);
      as.raw(x6(a, b), a, b, 5);
      detail::sym_put(as, a, 4, b, a5b(a, b));
      detail::sym_put(as, a, 5, b, a6b(a, b));
    }
    T dt_qt{}, dt_qq{}, dq_qt{}, dq_qq{};
    for (int d = 0; d < 4; ++d) {
      dt_qt += divt[d] * qt(a, d);
      dt_qq += divt[d] * qq(a, d);
      dq_qt += divq[d] * qt(a, d);
      dq_qq += divq[d] * qq(a, d);
    }
    detail::sym_put(as, a, 4, 4, -t2 / 4 * dt_qt);
    detail::sym_put(as, a, 4, 5, 0.5 * divd[a] - t2 / 4 * dt_qq);
    detail::sym_put(as, a, 5, 4, -0.5 * divd[a] - t2 / 4 * dq_qt);
    detail::sym_put(as, a, 5, 5, -t2 / 4 * dq_qq);
    T s55{}, s66{}, s56{};
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        s55 += qt(b, c) * dqt(b, c, a);
        s66 += qq(b, c) * dqq(b, c, a);
        s56 += qt(b, c) * dqq(b, c, a) + qq(b, c) * dqt(b, c, a);
      }
      s55 += divt[b] * qt(b, a);
      s66 += divq[b] * qq(b, a);
      s56 += qt(b, a) * divq[b] + qq(b, a) * divt[b];
    }
    as.raw(t2 / 2 * s55, 4, 4, a);
    as.raw(t2 / 2 * s66, 5, 5, a);
    detail::sym_put(as, 4, 5, a, t2 / 4 * s56);
  }
  T dt = frob(qd, qt), dq = frob(qd, qq);
  as.raw(T(0), 4, 4, 4);
  as.raw(t / 2 * dt, 4, 4, 5);
  as.raw(-t / 2 * dq, 5, 5, 4);
  as.raw(T(0), 5, 5, 5);
  detail::sym_put(as, 4, 5, 4, -t / 4 * dt);
  detail::sym_put(as, 4, 5, 5, t / 4 * dq);

  TwistorDerivatives<T> out;
  out.nabla_ricbar = as.finish();
  for (int a = 0; a < 4; ++a) {
    T x{};
    for (int c = 0; c < 4; ++c) x += dRic(c, c, a);
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) x -= t2 / 2 * (qt(b, c) * dqt(b, c, a) + qq(b, c) * dqq(b, c, a));
    out.nabla_sbar[a] = x;
  }
  out.nabla_sbar[4] = t / 2 * dq;
  out.nabla_sbar[5] = -t / 2 * dt;
  out.homogeneous_only = !(jet.dR && jet.d2);
  return out;
}

template <class T>
std::array<T, 6> nabla_sbar(const CurvatureJet<T>& jet, double t) { return twistor_nabla_ricci(jet, t).nabla_sbar; }

// ---------------------------------------------------------------- Kähler-Einstein fast path

namespace detail {

// KE hypothesis at the given t: B = 0, W⁺ = 0, S = 12/t²
template <class T>
void require_ke(const Riemann4<T>& R, double t, const char* who) {
  require_t(t);
  auto k = block_decompose(R);
  double scale = std::fmax(1.0, max_abs(R));
  double e = einstein_residual(k), sd = self_dual_residual(k);
  double s = std::fabs(value(scalar(R)) - 12 / (t * t));
  double worst = std::fmax(e, std::fmax(sd, s));
  if (!(worst <= 1e-9 * scale))
    throw hypothesis_violated(std::string(who) + ": needs Einstein, self-dual, S = 12/t^2 (Einstein " +
                                  std::to_string(e) + ", self-dual " + std::to_string(sd) + ", scalar " +
                                  std::to_string(s) + ")",
                              worst);
}

}  // namespace detail

template <class T>
T6<T, 4> ke_riemann(const Riemann4<T>& R, double t) {
  detail::require_ke(R, t, "ke_riemann");
  const double k = 1 / (t * t);
  Riemann4<T> H = R;
  auto add = [&](int p, int q, int r, int s, double x) {
    --p, --q, --r, --s;
    T v = R(p, q, r, s) + x;
    const int c[4][5] = {{p, q, r, s, 1}, {q, p, r, s, -1}, {p, q, s, r, -1}, {q, p, s, r, 1}};
    for (auto& e : c) {
      H(e[0], e[1], e[2], e[3]) = v * double(e[4]);
      H(e[2], e[3], e[0], e[1]) = v * double(e[4]);
    }
  };
  add(1, 3, 1, 3, -0.75 * k);
  add(4, 2, 4, 2, -0.75 * k);
  add(1, 4, 1, 4, -0.75 * k);
  add(2, 3, 2, 3, -0.75 * k);
  add(1, 2, 3, 4, 0.5 * k);
  add(1, 3, 4, 2, -0.25 * k);
  add(1, 4, 2, 3, -0.25 * k);

  Assembler<T, 6, 4> as("ke_rbar");
  as.zero_diagonal(0, 1);
  as.zero_diagonal(2, 3);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c)
        for (int d = 0; d < 4; ++d) {
          put_riem(as, a, b, c, d, H(a, b, c, d));
          put_riem(as, a, b, c, 4, T(0));
          put_riem(as, a, b, c, 5, T(0));
        }
  put_riem(as, 4, 5, 4, 5, T(k));
  put_riem(as, 4, 0, 1, 5, T(-0.25 * k));
  put_riem(as, 4, 2, 3, 5, T(-0.25 * k));
  put_riem(as, 4, 1, 0, 5, T(0.25 * k));
  put_riem(as, 4, 3, 2, 5, T(0.25 * k));
  put_riem(as, 0, 1, 4, 5, T(0.5 * k));
  put_riem(as, 2, 3, 4, 5, T(0.5 * k));
  for (int a = 0; a < 4; ++a) {
    put_riem(as, 4, 5, 4, a, T(0));
    put_riem(as, 4, 5, a, 5, T(0));
    for (int b = 0; b < 4; ++b) {
      put_riem(as, 4, a, b, 4, T(a == b ? -0.25 * k : 0.0));
      put_riem(as, 5, a, b, 5, T(a == b ? -0.25 * k : 0.0));
      if (!as.has(4, a, b, 5)) put_riem(as, 4, a, b, 5, T(0));
      if (!as.has(a, b, 4, 5)) put_riem(as, a, b, 4, 5, T(0));
    }
  }
  return as.finish();
}

template <class T>
T6<T, 5> ke_nabla_riemann(const CurvatureJet<T>& jet, double t) {
  detail::require_ke(jet.R, t, "ke_nabla_riemann");
  if (jet.dR) {
    // ∇R of such a metric is ∇W⁻ only
    double scale = std::fmax(1.0, max_abs(*jet.dR)), worst = 0;
    for (int e = 0; e < 4; ++e) {
      Riemann4<T> s;
      for (int i = 0; i < s.size; ++i) s.v[i] = jet.dR->v[i * 4 + e];
      auto kb = block_decompose(s);
      worst = std::fmax(worst, std::fmax(max_abs(kb.A), max_abs(kb.B)));
    }
    if (!(worst <= 1e-9 * scale))
      throw hypothesis_violated("ke_nabla_riemann: nabla R has components outside nabla W-", worst);
  }
  const double k = 1 / (t * t);
  const auto& R = jet.R;
  auto Rr = [&](int a, int b, int c, int d) -> T { return R(a - 1, b - 1, c - 1, d - 1); };
  auto dl = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  using Row = std::array<std::function<T(int)>, 4>;
  // 2t R̄_{ab c5, e} and 2t R̄_{ab c6, e}, e = 1..4
  const std::array<std::pair<int, int>, 6> pairs = {{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};
  std::array<Row, 6> rows5 = {{
      {[&](int c) { return -Rr(1, 2, c, 3); }, [&](int c) { return Rr(1, 2, c, 4); },
       [&](int c) { return k * dl(2, c) - Rr(1, 2, 1, c); }, [&](int c) { return k * dl(1, c) - Rr(1, 2, c, 2); }},
      {[&](int c) { return k * dl(1, c) - Rr(1, 3, c, 3); }, [&](int c) { return Rr(1, 3, c, 4); },
       [&](int c) { return k * dl(3, c) - Rr(1, 3, 1, c); }, [&](int c) { return -Rr(1, 3, c, 2); }},
      {[&](int c) { return -Rr(1, 4, c, 3); }, [&](int c) { return Rr(1, 4, c, 4) - k * dl(1, c); },
       [&](int c) { return k * dl(4, c) - Rr(1, 4, 1, c); }, [&](int c) { return -Rr(1, 4, c, 2); }},
      {[&](int c) { return k * dl(2, c) - Rr(2, 3, c, 3); }, [&](int c) { return Rr(2, 3, c, 4); },
       [&](int c) { return Rr(2, 3, c, 1); }, [&](int c) { return Rr(2, 3, 2, c) - k * dl(3, c); }},
      {[&](int c) { return Rr(4, 2, c, 3); }, [&](int c) { return Rr(4, 2, 4, c) - k * dl(2, c); },
       [&](int c) { return -Rr(4, 2, c, 1); }, [&](int c) { return Rr(4, 2, c, 2) - k * dl(4, c); }},
      {[&](int c) { return Rr(3, 4, 3, c) - k * dl(4, c); }, [&](int c) { return Rr(3, 4, c, 4) - k * dl(3, c); },
       [&](int c) { return Rr(3, 4, c, 1); }, [&](int c) { return -Rr(3, 4, c, 2); }},
  }};
  std::array<Row, 6> rows6 = {{
      {[&](int c) { return -Rr(1, 2, c, 4); }, [&](int c) { return -Rr(1, 2, c, 3); },
       [&](int c) { return Rr(1, 2, c, 2) - k * dl(1, c); }, [&](int c) { return k * dl(2, c) - Rr(1, 2, 1, c); }},
      {[&](int c) { return -Rr(1, 3, c, 4); }, [&](int c) { return k * dl(1, c) - Rr(1, 3, c, 3); },
       [&](int c) { return Rr(1, 3, c, 2); }, [&](int c) { return k * dl(3, c) - Rr(1, 3, 1, c); }},
      {[&](int c) { return k * dl(1, c) - Rr(1, 4, c, 4); }, [&](int c) { return -Rr(1, 4, c, 3); },
       [&](int c) { return Rr(1, 4, c, 2); }, [&](int c) { return k * dl(4, c) - Rr(1, 4, 1, c); }},
      {[&](int c) { return -Rr(2, 3, c, 4); }, [&](int c) { return k * dl(2, c) - Rr(2, 3, c, 3); },
       [&](int c) { return k * dl(3, c) - Rr(2, 3, 2, c); }, [&](int c) { return -Rr(2, 3, 1, c); }},
      {[&](int c) { return k * dl(2, c) - Rr(4, 2, 4, c); }, [&](int c) { return Rr(4, 2, c, 3); },
       [&](int c) { return k * dl(4, c) - Rr(4, 2, c, 2); }, [&](int c) { return Rr(4, 2, 1, c); }},
      {[&](int c) { return k * dl(3, c) - Rr(3, 4, c, 4); }, [&](int c) { return Rr(3, 4, 3, c) - k * dl(4, c); },
       [&](int c) { return Rr(3, 4, c, 2); }, [&](int c) { return -Rr(3, 4, 1, c); }},
  }};

  Assembler<T, 6, 5> as("ke_nabla_rbar");
  as.zero_diagonal(0, 1);
  as.zero_diagonal(2, 3);
  for (int i = 0; i < 6; ++i) {
    auto [a, b] = pairs[i];
    for (int e = 1; e <= 4; ++e)
      for (int c = 1; c <= 4; ++c) {
        put_riem(as, a - 1, b - 1, c - 1, 4, rows5[i][e - 1](c) / (2 * t), e - 1);
        put_riem(as, a - 1, b - 1, c - 1, 5, rows6[i][e - 1](c) / (2 * t), e - 1);
      }
  }
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q)
      for (int r = 0; r < 6; ++r)
        for (int s = 0; s < 6; ++s)
          for (int u = 0; u < 6; ++u) {
            int nv = (p > 3) + (q > 3) + (r > 3) + (s > 3);
            if (nv == 1 && u < 4) continue;
            if (nv == 0 && u < 4)
              as.raw(jet.dR ? (*jet.dR)(p, q, r, s, u) : T(0), p, q, r, s, u);
            else
              as.raw(T(0), p, q, r, s, u);
          }
  return as.finish();
}

}  // namespace twistorlab
