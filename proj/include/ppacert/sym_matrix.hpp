#pragma once

#include <cassert>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ppacert/rational.hpp"

namespace ppacert {

/// Dense symmetric matrix storing only the upper triangle (row-major).
/// Indices are 0-based; (i,j) and (j,i) address the same entry.
template <class T>
class SymMatrixT {
public:
  SymMatrixT() : n_(0) {}
  explicit SymMatrixT(int order)
      : n_(order), e_(static_cast<size_t>(order) * (order + 1) / 2) {
    if (order < 0) throw std::invalid_argument("SymMatrixT: negative order");
  }

  int order() const { return n_; }

  T& operator()(int i, int j) { return e_[idx(i, j)]; }
  const T& operator()(int i, int j) const { return e_[idx(i, j)]; }

  static SymMatrixT identity(int order) {
    SymMatrixT m(order);
    for (int i = 0; i < order; ++i) m(i, i) = T(1);
    return m;
  }

  SymMatrixT& operator+=(const SymMatrixT& o) {
    require_same_order(o);
    for (size_t k = 0; k < e_.size(); ++k) e_[k] += o.e_[k];
    return *this;
  }
  SymMatrixT& operator-=(const SymMatrixT& o) {
    require_same_order(o);
    for (size_t k = 0; k < e_.size(); ++k) e_[k] -= o.e_[k];
    return *this;
  }
  SymMatrixT& operator*=(const T& s) {
    for (auto& e : e_) e *= s;
    return *this;
  }
  friend SymMatrixT operator+(SymMatrixT a, const SymMatrixT& b) { return a += b; }
  friend SymMatrixT operator-(SymMatrixT a, const SymMatrixT& b) { return a -= b; }
  friend SymMatrixT operator*(const T& s, SymMatrixT a) { return a *= s; }

  friend bool operator==(const SymMatrixT& a, const SymMatrixT& b) {
    return a.n_ == b.n_ && a.e_ == b.e_;
  }

private:
  void require_same_order(const SymMatrixT& o) const {
    if (n_ != o.n_) throw std::invalid_argument("SymMatrixT: order mismatch");
  }
  size_t idx(int i, int j) const {
    if (i > j) std::swap(i, j);
    assert(i >= 0 && j < n_);
    return static_cast<size_t>(i) * n_ - static_cast<size_t>(i) * (i - 1) / 2 +
           static_cast<size_t>(j - i);
  }

  int n_;
  std::vector<T> e_;
};

using SymMatrix = SymMatrixT<Rational>;

}  // namespace ppacert
