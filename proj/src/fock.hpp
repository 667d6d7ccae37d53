#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "hamiltonian.hpp"

namespace qsos {

/// One normal-form term coeff * psi^+_{c_1}..psi^+_{c_k} psi_{a_1}..psi_{a_m}
/// on a spinless chain; operators act right to left.
struct SpinlessTerm {
  std::vector<int> creations;
  std::vector<int> annihilations;
  double coeff = 0.0;
};

struct SpinlessOperator {
  int n_modes = 0;
  std::vector<SpinlessTerm> terms;
};

/// Explicit operator on the 2^modes Fock space. Basis state with bitmask s is
/// (psi^+_0)^{s_0} (psi^+_1)^{s_1} ... |vac>, so psi^+_m |s> carries the sign
/// (-1)^{popcount(s & (2^m - 1))}.  Desk-scale oracle only.
struct FockOperator {
  int modes = 0;
  bool spinful = false;  // set by build_spinful; enables (N_up, N_down) sectors
  Eigen::MatrixXd matrix;

  int dim() const { return 1 << modes; }
};

struct PtEnergies {
  double e0 = 0, e1 = 0, e2 = 0, e3 = 0;
};

/// Spinful modes are interleaved: mode = 2*orbital + spin (0 = up, 1 = down).
inline int spinful_mode(int orbital, int spin) { return 2 * orbital + spin; }

/// Explicit matrix of a SpinfulHamiltonian on the 2^(2 n_o) Fock space.
/// Dimension cap 2^14 (n_o <= 7).
FockOperator build_spinful(const SpinfulHamiltonian& h);

/// Explicit matrix of a spinless term list (n <= 14). Terms are used exactly as
/// given; no Hermitian conjugates are added implicitly.
FockOperator build_spinless(const SpinlessOperator& op);

/// Matrix of a single psi^+_m (create = true) or psi_m.
FockOperator mode_operator(int modes, int m, bool create);

/// Minimum eigenvalue. Splits into conserved-charge sectors when the matrix is
/// block diagonal under (N_up, N_down), total N, or parity; falls back to a full
/// diagonalization otherwise. Throws NonHermitian if the matrix is not symmetric.
double ground_energy(const FockOperator& op);

/// Ground energy and normalized ground state (full dense diagonalization).
std::pair<double, Eigen::VectorXd> ground_state(const FockOperator& op);

/// Sector-wise exact ground energy of a spinful Hamiltonian without forming the
/// full Fock matrix. Cap n_o <= 7.
double spinful_ground_energy(const SpinfulHamiltonian& h);

/// ab + ba.
FockOperator brute_anticommutator(const FockOperator& a, const FockOperator& b);

/// Rayleigh-Schrodinger perturbation series coefficients for H0 + eps*V through
/// third order, computed by explicit spectral sums over the Fock space.
/// H0 must be quadratic (G = 0) with a unique ground state; V must have h0 = 0.
PtEnergies rs_pt(const SpinfulHamiltonian& h0, const SpinfulHamiltonian& v, int order = 3);

/// Same series for a spinless problem with diagonal H0 = sum_j e_j n_j.
PtEnergies rs_pt_spinless(const std::vector<double>& energies, const SpinlessOperator& v,
                          int order = 3);

/// y = H x on the full 4^n_o space without forming the matrix.
Eigen::VectorXd apply_spinful(const SpinfulHamiltonian& h, const Eigen::VectorXd& x);

/// y = V x for a spinless term list.
Eigen::VectorXd apply_spinless(const SpinlessOperator& op, const Eigen::VectorXd& x);

}  // namespace qsos
