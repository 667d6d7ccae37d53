#pragma once

#include <Eigen/Dense>

#include "tensor4.hpp"

namespace qsos {

/// Number- and spin-conserving Hamiltonian with real coefficients,
///
///   H = scalar + sum_{ij,s} h0[i,j] psi^+_{i,s} psi_{j,s}
///              + sum_{ijkl,s,t} G[i,j,k,l] psi^+_{i,s} psi_{j,s} psi^+_{k,t} psi_{l,t}.
///
/// Hermiticity convention: h0 symmetric and G[i,j,k,l] = G[l,k,j,i].
struct SpinfulHamiltonian {
  int n_o = 0;
  double scalar = 0.0;
  Eigen::MatrixXd h0;
  Tensor4 g;

  static SpinfulHamiltonian zero(int n_o) {
    SpinfulHamiltonian h;
    h.n_o = n_o;
    h.h0 = Eigen::MatrixXd::Zero(n_o, n_o);
    h.g = Tensor4(n_o);
    return h;
  }
};

/// Symmetrize h0 and G so both type invariants hold exactly. Idempotent.
SpinfulHamiltonian hermitize(const SpinfulHamiltonian& h);

/// Max deviation from the Hermiticity invariants.
double hermiticity_defect(const SpinfulHamiltonian& h);

/// Orbital basis change by an orthogonal matrix: h0' = U^T h0 U and
/// G'[e,f,g,h] = sum G[a,b,c,d] U[a,e] U[b,f] U[c,g] U[d,h].
/// Throws NonOrthogonalBasis if U^T U deviates from identity beyond tol.
SpinfulHamiltonian rotate(const SpinfulHamiltonian& h, const Eigen::MatrixXd& u,
                          double tol = 1e-12);

/// Block-diagonal combination of two independent systems (no cross couplings).
SpinfulHamiltonian direct_sum(const SpinfulHamiltonian& a, const SpinfulHamiltonian& b);

/// Hartree-Fock-style expectation of h in the Slater determinant described by the
/// projectors onto occupied/empty orbitals:
///   scalar + 2 tr(h0 occ) + 4 sum G[a,b,c,d] occ[a,b] occ[c,d]
///          + 2 sum G[a,b,d,c] occ[a,c] empty[b,d].
double determinant_expectation(const SpinfulHamiltonian& h, const Eigen::MatrixXd& occupied,
                               const Eigen::MatrixXd& empty);

/// Eigendecomposition with deterministic output: eigenvalues ascending, each
/// eigenvector's largest-magnitude component made positive.
struct EigResult {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};
EigResult eigh(const Eigen::MatrixXd& m);

}  // namespace qsos
