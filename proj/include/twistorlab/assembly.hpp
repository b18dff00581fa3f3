#pragma once

#include <bitset>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "tensor.hpp"

namespace twistorlab {

// Fills a tensor family by family. Every write goes through the symmetry
// copies; a second write to the same entry is compared instead of overwritten
// so that over-determined tables cross-check themselves. finish() refuses to
// hand out a tensor with an entry nobody wrote.
template <class T, int D, int R>
class Assembler {
 public:
  using tensor_type = Tensor<T, D, R>;

  explicit Assembler(std::string name) : name_(std::move(name)) {}

  void put(int off, const T& x) {
    if (set_[off]) {
      conflict_ = std::fmax(conflict_, std::fabs(value(out_.v[off] - x)));
      return;
    }
    set_[off] = true;
    out_.v[off] = x;
  }

  template <class... I>
  void raw(const T& x, I... i) { put(tensor_type::offset(i...), x); }

  template <class... I>
  bool has(I... i) const { return set_[tensor_type::offset(i...)]; }

  template <class... I>
  const T& get(I... i) const { return out_.v[tensor_type::offset(i...)]; }

  // entries forced to zero by antisymmetry in the given slot pair
  void zero_diagonal(int s1, int s2) {
    for (int k = 0; k < tensor_type::size; ++k) {
      int idx[R];
      int o = k;
      for (int j = R - 1; j >= 0; --j) { idx[j] = o % D; o /= D; }
      if (idx[s1] == idx[s2]) put(k, T(0));
    }
  }

  double conflict() const { return conflict_; }

  tensor_type finish() const {
    if (!set_.all()) {
      for (int k = 0; k < tensor_type::size; ++k)
        if (!set_[k]) {
          std::string idx;
          int o = k;
          for (int j = 0; j < R; ++j) {
            idx = std::to_string(o % D + 1) + idx;
            o /= D;
          }
          throw assembly_coverage(name_ + ": component " + idx + " not determined by the tables");
        }
    }
    return out_;
  }

 private:
  std::string name_;
  tensor_type out_{};
  std::bitset<static_cast<size_t>(tensor_type::size)> set_;
  double conflict_ = 0;
};

// Riemann-type write: (pq) and (rs) antisymmetric, pair symmetric.
// Extra trailing slots (derivative index) ride along unchanged.
template <class T, int D, int R, class... E>
void put_riem(Assembler<T, D, R>& as, int p, int q, int r, int s, const T& x, E... e) {
  as.raw(x, p, q, r, s, e...);
  as.raw(-x, q, p, r, s, e...);
  as.raw(-x, p, q, s, r, e...);
  as.raw(x, q, p, s, r, e...);
  as.raw(x, r, s, p, q, e...);
  as.raw(-x, s, r, p, q, e...);
  as.raw(-x, r, s, q, p, e...);
  as.raw(x, s, r, q, p, e...);
}

}  // namespace twistorlab
