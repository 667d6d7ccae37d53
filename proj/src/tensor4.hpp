#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <vector>

#include "errors.hpp"

namespace qsos {

/// Dense real four-index tensor with row-major flat layout i*n^3 + j*n^2 + k*n + l.
/// Used for quartic coefficient tensors (G) and the cubic part of tau (T).
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int n) : n_(n), v_(static_cast<std::size_t>(n) * n * n * n, 0.0) {}

  int dim() const { return n_; }
  std::size_t size() const { return v_.size(); }

  double& operator()(int i, int j, int k, int l) { return v_[idx(i, j, k, l)]; }
  double operator()(int i, int j, int k, int l) const { return v_[idx(i, j, k, l)]; }

  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }

  std::size_t idx(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * n_ + j) * n_ + k) * n_ + l;
  }

  Tensor4& operator+=(const Tensor4& o) {
    check_same(o);
    for (std::size_t p = 0; p < v_.size(); ++p) v_[p] += o.v_[p];
    return *this;
  }
  Tensor4& operator-=(const Tensor4& o) {
    check_same(o);
    for (std::size_t p = 0; p < v_.size(); ++p) v_[p] -= o.v_[p];
    return *this;
  }
  Tensor4& operator*=(double s) {
    for (double& x : v_) x *= s;
    return *this;
  }
  friend Tensor4 operator+(Tensor4 a, const Tensor4& b) { return a += b; }
  friend Tensor4 operator-(Tensor4 a, const Tensor4& b) { return a -= b; }
  friend Tensor4 operator*(double s, Tensor4 a) { return a *= s; }

  /// axpy: *this += s * o
  void add_scaled(double s, const Tensor4& o) {
    check_same(o);
    for (std::size_t p = 0; p < v_.size(); ++p) v_[p] += s * o.v_[p];
  }

  /// Index-reversed tensor R[i,j,k,l] = T[l,k,j,i] (Hermitian conjugation of the
  /// quartic coefficient in the spin-summed convention).
  Tensor4 reversed() const {
    Tensor4 r(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        for (int k = 0; k < n_; ++k)
          for (int l = 0; l < n_; ++l) r(i, j, k, l) = (*this)(l, k, j, i);
    return r;
  }

  /// Basis change G'[e,f,g,h] = sum_{abcd} G[a,b,c,d] U[a,e] U[b,f] U[c,g] U[d,h],
  /// evaluated one mode at a time (four n^5 contractions instead of one n^8 loop).
  Tensor4 rotated(const Eigen::MatrixXd& u) const {
    if (u.rows() != n_ || u.cols() != n_) fail(ErrorCode::ShapeMismatch, "rotation matrix shape");
    using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const int n = n_;
    const int n2 = n * n;
    const int n3 = n2 * n;
    Tensor4 a(*this), b(n);
    // Mode 0: whole tensor viewed as (n, n^3).
    {
      Eigen::Map<const RowMat> in(a.data(), n, n3);
      Eigen::Map<RowMat> out(b.data(), n, n3);
      out.noalias() = u.transpose() * in;
    }
    std::swap(a, b);
    // Mode 1: for each leading index, slice is (n, n^2).
    for (int e = 0; e < n; ++e) {
      Eigen::Map<const RowMat> in(a.data() + static_cast<std::size_t>(e) * n3, n, n2);
      Eigen::Map<RowMat> out(b.data() + static_cast<std::size_t>(e) * n3, n, n2);
      out.noalias() = u.transpose() * in;
    }
    std::swap(a, b);
    // Mode 2: for each (e,f) pair, slice is (n, n).
    for (int ef = 0; ef < n2; ++ef) {
      Eigen::Map<const RowMat> in(a.data() + static_cast<std::size_t>(ef) * n2, n, n);
      Eigen::Map<RowMat> out(b.data() + static_cast<std::size_t>(ef) * n2, n, n);
      out.noalias() = u.transpose() * in;
    }
    std::swap(a, b);
    // Mode 3: whole tensor viewed as (n^3, n).
    {
      Eigen::Map<const RowMat> in(a.data(), n3, n);
      Eigen::Map<RowMat> out(b.data(), n3, n);
      out.noalias() = in * u;
    }
    std::swap(a, b);
    return a;
  }

  double abs_sum() const {
    double s = 0;
    for (double x : v_) s += std::abs(x);
    return s;
  }

  double max_abs() const {
    double m = 0;
    for (double x : v_) m = std::max(m, std::abs(x));
    return m;
  }

  bool all_finite() const {
    for (double x : v_) {
      if (!std::isfinite(x)) return false;
    }
    return true;
  }

 private:
  void check_same(const Tensor4& o) const {
    if (o.n_ != n_) fail(ErrorCode::ShapeMismatch, "tensor dimension mismatch");
  }

  int n_ = 0;
  std::vector<double> v_;
};

}  // namespace qsos
