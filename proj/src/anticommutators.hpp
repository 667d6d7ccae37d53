#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tensor4.hpp"

namespace qsos {

/// Coefficients of a charge-(-1), spin-1/2 operator
///   tau_{i,s} = sum_{jkl,t} T[i,j,k,l] psi_{j,s} psi^+_{k,t} psi_{l,t}
///             + sum_j T1[i,j] psi_{j,s}.
struct TauTensor {
  Tensor4 T;
  Eigen::MatrixXd T1;

  int n() const { return T.dim(); }
  static TauTensor zero(int n) { return {Tensor4(n), Eigen::MatrixXd::Zero(n, n)}; }
};

/// Flat 6-index tensor [l1, l2, p, q, r, s]: two operator labels followed by
/// four orbital indices.
struct Tensor6 {
  int n = 0;
  std::vector<double> v;

  Tensor6() = default;
  explicit Tensor6(int n_)
      : n(n_), v(static_cast<std::size_t>(n_) * n_ * n_ * n_ * n_ * n_, 0.0) {}

  std::size_t idx(int l1, int l2, int p, int q, int r, int s) const {
    return ((((static_cast<std::size_t>(l1) * n + l2) * n + p) * n + q) * n + r) * n + s;
  }
  double& at(int l1, int l2, int p, int q, int r, int s) { return v[idx(l1, l2, p, q, r, s)]; }
  double at(int l1, int l2, int p, int q, int r, int s) const { return v[idx(l1, l2, p, q, r, s)]; }
  bool empty() const { return v.empty(); }
};

/// Scalar/quadratic/quartic pieces of a fixed-spin anticommutator, indexed by a
/// pair of operator labels. For each label pair the quadratic entry is the
/// coefficient of sum_t psi^+_{p,t} psi_{q,t} and the quartic entry the
/// coefficient of sum_{s,t} psi^+_{p,s} psi_{q,s} psi^+_{r,t} psi_{s',t}
/// (the same conventions as h0 and G).
struct AnticommutatorParts {
  int n = 0;
  Eigen::MatrixXd scalar;  // [l1, l2]
  Tensor4 quadratic;       // [l1, l2, p, q]
  Tensor6 quartic;         // [l1, l2, p, q, r, s]; empty when identically zero

  /// Quadratic coefficients for one label pair as an n x n matrix.
  Eigen::MatrixXd quad_slice(int l1, int l2) const;
  /// Quartic coefficients for one label pair as a Tensor4.
  Tensor4 quart_slice(int l1, int l2) const;
};

/// Parts of {tau^A_a^+, tau^B_j} at fixed spin, indexed [j, a] (second operator
/// first, matching the contraction formulas). Bilinear in A and B.
AnticommutatorParts tau_tau_anticommutator(const TauTensor& a, const TauTensor& b);

/// Parts of {psi^+_p, tau_t} indexed [p, t] and of {tau_t^+, psi_p} indexed
/// [t, p]; quartic parts are identically zero.
std::pair<AnticommutatorParts, AnticommutatorParts> psi_tau_anticommutators(const TauTensor& a);

/// Middle-pair trace M[x,y] = sum_b T[x,b,b,y].
Eigen::MatrixXd trace12(const Tensor4& t);

}  // namespace qsos
