#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <type_traits>

namespace twistorlab {

constexpr int ipow(int b, int e) { return e == 0 ? 1 : b * ipow(b, e - 1); }

// Dense fixed-size tensor, row-major, every slot has extent D.
template <class T, int D, int R>
struct Tensor {
  static constexpr int dim = D;
  static constexpr int rank = R;
  static constexpr int size = ipow(D, R);
  using value_type = T;

  std::array<T, size> v{};

  template <class... I>
  static constexpr int offset(I... i) {
    static_assert(sizeof...(I) == R, "index count must match rank");
    int o = 0;
    ((o = o * D + static_cast<int>(i)), ...);
    return o;
  }

  template <class... I>
  T& operator()(I... i) { return v[offset(i...)]; }
  template <class... I>
  const T& operator()(I... i) const { return v[offset(i...)]; }

  T& operator[](int k) { return v[k]; }
  const T& operator[](int k) const { return v[k]; }

  Tensor& operator+=(const Tensor& o) {
    for (int k = 0; k < size; ++k) v[k] += o.v[k];
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    for (int k = 0; k < size; ++k) v[k] -= o.v[k];
    return *this;
  }
  template <class S>
  Tensor& operator*=(const S& s) {
    for (auto& x : v) x *= s;
    return *this;
  }
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator-(Tensor a) {
    for (auto& x : a.v) x = -x;
    return a;
  }
  template <class S, class = std::enable_if_t<!std::is_same_v<std::decay_t<S>, Tensor>>>
  friend Tensor operator*(Tensor a, const S& s) { return a *= s; }
  template <class S, class = std::enable_if_t<!std::is_same_v<std::decay_t<S>, Tensor>>>
  friend Tensor operator*(const S& s, Tensor a) { return a *= s; }
};

template <class T, int R> using T4 = Tensor<T, 4, R>;
template <class T, int R> using T6 = Tensor<T, 6, R>;
template <class T> using Mat3 = Tensor<T, 3, 2>;
template <class T> using Mat4 = Tensor<T, 4, 2>;
template <class T> using Mat6 = Tensor<T, 6, 2>;

// value() strips derivative parts so comparisons work for any scalar type.
inline double value(double x) { return x; }
template <class T>
auto value(const T& x) -> decltype(x.val) { return x.val; }

template <class T, int D, int R>
double max_abs(const Tensor<T, D, R>& a) {
  double m = 0;
  for (const auto& x : a.v) m = std::fmax(m, std::fabs(value(x)));
  return m;
}

template <class T, int D, int R>
double max_abs_diff(const Tensor<T, D, R>& a, const Tensor<T, D, R>& b) {
  double m = 0;
  for (int k = 0; k < a.size; ++k) m = std::fmax(m, std::fabs(value(a.v[k] - b.v[k])));
  return m;
}

template <class T, int D, int R>
T norm2(const Tensor<T, D, R>& a) {
  T s{};
  for (const auto& x : a.v) s += x * x;
  return s;
}

template <class T, int D>
Tensor<T, D, 2> identity() {
  Tensor<T, D, 2> m;
  for (int i = 0; i < D; ++i) m(i, i) = T(1);
  return m;
}

template <class T, int D>
Tensor<T, D, 2> matmul(const Tensor<T, D, 2>& a, const Tensor<T, D, 2>& b) {
  Tensor<T, D, 2> c;
  for (int i = 0; i < D; ++i)
    for (int k = 0; k < D; ++k)
      for (int j = 0; j < D; ++j) c(i, j) += a(i, k) * b(k, j);
  return c;
}

template <class T, int D>
Tensor<T, D, 2> transpose(const Tensor<T, D, 2>& a) {
  Tensor<T, D, 2> c;
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) c(i, j) = a(j, i);
  return c;
}

template <class T, int D>
T trace(const Tensor<T, D, 2>& a) {
  T s{};
  for (int i = 0; i < D; ++i) s += a(i, i);
  return s;
}

// a·b·aᵀ-style sandwich used for frame changes: out = mᵀ x m
template <class T, class S, int D>
Tensor<T, D, 2> congruence(const Tensor<S, D, 2>& m, const Tensor<T, D, 2>& x) {
  Tensor<T, D, 2> out;
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      T s{};
      for (int p = 0; p < D; ++p)
        for (int q = 0; q < D; ++q) s += m(p, i) * x(p, q) * m(q, j);
      out(i, j) = s;
    }
  return out;
}

template <class T, int D>
Tensor<T, D, 2> sym_part(const Tensor<T, D, 2>& a) {
  Tensor<T, D, 2> c;
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) c(i, j) = (a(i, j) + a(j, i)) * 0.5;
  return c;
}

// Frobenius pairing Σ a_ij b_ij
template <class T, int D>
T dot(const Tensor<T, D, 2>& a, const Tensor<T, D, 2>& b) {
  T s{};
  for (int k = 0; k < a.size; ++k) s += a.v[k] * b.v[k];
  return s;
}

template <class T, int D>
bool is_finite(const Tensor<T, D, 2>& a) {
  for (const auto& x : a.v)
    if (!std::isfinite(value(x))) return false;
  return true;
}

}  // namespace twistorlab
