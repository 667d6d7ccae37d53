#pragma once

#include <Eigen/Dense>

#include "anticommutators.hpp"
#include "hamiltonian.hpp"

namespace qsos {

struct StepConfig {
  double min_gap = 1e-8;        // guide eigenvalues must exceed this in magnitude
  double overlap_floor = 1e-10; // tau overlap eigenvalues below this count as null;
                                // below -overlap_floor the step aborts
};

/// Output of one effective-Hamiltonian step. The shifts are the scalar,
/// quadratic, and quartic difference between the Hamiltonian the sum-of-squares
/// actually equals and the trial Hamiltonian, so
///   trial + scalar_shift + H(h0_shift, g_shift) = (sum of squares) >= 0,
/// all expressed in the basis the trial was given in.
struct EffectiveShift {
  double scalar_shift = 0;
  Eigen::MatrixXd h0_shift;
  Tensor4 g_shift;
  Eigen::MatrixXd occupied;   // projector onto negative guide modes, old basis
  Eigen::MatrixXd empty;      // complement
  Eigen::MatrixXd guide_new;  // psi-psi block of H_psitau, back-rotated
  double psitau_energy = 0;   // 2 * sum of the negative eigenvalues of H_psitau
};

/// Intermediates exposed for oracle tests: everything is in the guide eigenbasis
/// with the overlap-label rotation already applied and the sqrt(S) scaling undone
/// on the eigenvectors, so column i of psitau_vecs gives the coefficients of an
/// operator sum_p v_p psi_p + sum_p v_{n+p} tau_p.
struct StepInternals {
  Eigen::MatrixXd guide_vecs;
  Eigen::VectorXd guide_vals;
  TauTensor tau;              // after the overlap-label rotation
  Eigen::VectorXd overlap_vals;
  Eigen::VectorXd psitau_vals;
  Eigen::MatrixXd psitau_vecs;
};

/// Coefficients of tau derived from the rotated quartic tensor and the guide
/// eigenvalues, plus the corrections the derivation feeds into the psi-psi block
/// of H_psitau.
struct TauBuild {
  TauTensor tau;
  Eigen::MatrixXd hpsitau_corrections;
};

/// Branch-table construction of tau: each quartic entry is split according to
/// which of its four operators create or destroy excitations of the guide, and
/// the entry, weighted 1/2 when exactly two excitations are involved, is divided
/// by the summed excitation energy. Throws GapTooSmall when a guide eigenvalue
/// has magnitude <= min_gap.
TauBuild build_tau(const Eigen::VectorXd& guide_vals, const Tensor4& g_new,
                   double min_gap = 1e-8);

/// Gram matrix of the tau operators in the guide ground state,
///   Stemp = scalar + 2 quad.occ + 4 quart.(occ x occ) + 2 quart.(occ x empty),
/// with diagonal projectors given by the guide eigenvalue signs.
Eigen::MatrixXd overlap_matrix(const TauTensor& tau, const Eigen::VectorXd& occupied_diag,
                               const Eigen::VectorXd& empty_diag);

/// One full effective-Hamiltonian step: rotate the trial into the guide
/// eigenbasis, build tau and H_psitau, orthonormalize the tau sector by the
/// overlap matrix, diagonalize, and accumulate the anticommutator parts of the
/// negative-eigenvalue squares into shifts.
EffectiveShift effective_step(const SpinfulHamiltonian& trial, const Eigen::MatrixXd& guide,
                              const StepConfig& cfg = {}, StepInternals* internals = nullptr);

}  // namespace qsos
