#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fock.hpp"

namespace qsos {

/// Quartic perturbation of a spinless chain in the particle-hole-transformed
/// convention (all unperturbed energies positive), split into the three
/// normal-ordered families
///   sum_{i<j<k<l} V[ijkl] psi_i psi_j psi_k psi_l + h.c.
///   sum_i sum_{j<k<l} V[i-bar,jkl] psi^+_i psi_j psi_k psi_l + h.c.
///   sum_{i>j} sum_{k<l} V[i-bar,j-bar,kl] psi^+_i psi^+_j psi_k psi_l.
/// Stored as dense tensors with the antisymmetries applied, so components can
/// be read with arbitrary index order. The two-creation family additionally
/// satisfies the reversal symmetry c2a2[i,j,k,l] = c2a2[l,k,j,i] that makes the
/// operator Hermitian without an explicit conjugate sum.
struct SpinlessPerturbation {
  int n = 0;
  std::vector<double> e;  // positive mode energies

  std::vector<double> a4;    // totally antisymmetric; also the 4-creation coefficients
  std::vector<double> c1a3;  // antisymmetric in the last three indices
  std::vector<double> c2a2;  // antisymmetric in (0,1) and (2,3); reversal symmetric

  explicit SpinlessPerturbation(int n_modes);

  std::size_t idx(int i, int j, int k, int l) const {
    return ((static_cast<std::size_t>(i) * n + j) * n + k) * n + l;
  }
  double v4(int i, int j, int k, int l) const { return a4[idx(i, j, k, l)]; }
  double v31(int i, int j, int k, int l) const { return c1a3[idx(i, j, k, l)]; }
  double v22(int i, int j, int k, int l) const { return c2a2[idx(i, j, k, l)]; }
  /// Three-creation-one-annihilation coefficient V[a-bar,b-bar,c-bar,d],
  /// obtained from the conjugate family: -c1a3[d,a,b,c].
  double v3c1a(int a, int b, int c, int d) const { return -c1a3[idx(d, a, b, c)]; }

  /// Set one base component and all its (anti)symmetry images. Indices must be
  /// distinct within each antisymmetric group.
  void set_v4(int i, int j, int k, int l, double v);
  void set_v31(int i, int j, int k, int l, double v);
  void set_v22(int i, int j, int k, int l, double v);

  /// The perturbation as an explicit normal-ordered term list.
  SpinlessOperator to_operator() const;

  void validate() const;
};

/// Families selectable in the random generator.
enum : unsigned {
  kFamilyV4 = 1u,
  kFamilyV31 = 2u,
  kFamilyV22 = 4u,
  kFamilyAll = 7u,
};

/// Seeded random instance: energies uniform in [1, 2], independent standard
/// normal coefficients for every base component of the selected families,
/// drawn in lexicographic order.
SpinlessPerturbation random_perturbation(int n, std::uint64_t seed,
                                         unsigned families = kFamilyAll);

/// One term of a dressed-operator correction: coeff times a product of
/// creation operators (listed left to right).
struct CreationTerm {
  std::vector<int> creators;
  double coeff = 0;
};

/// Perturbative dressed annihilation operator for one mode:
///   psi_i + eps O1 + eps^2 O2 annihilates the perturbed ground state to the
/// order kept. o1 is stored densely with o1[j,k,l] = -V[i-,j-,k-,l-]/(e_i+e_j+
/// e_k+e_l); o2 keeps the six coefficient groups of the second-order formula
/// (degrees 5, 3, 1, 5, 3, 1), signed so that O2 is the plain sum of all six.
struct DressedOperator {
  int mode = 0;
  int n = 0;
  std::vector<double> o1;  // dense antisymmetric [j,k,l]
  std::array<std::vector<CreationTerm>, 6> o2_groups;

  double o1_at(int j, int k, int l) const {
    return o1[(static_cast<std::size_t>(j) * n + k) * n + l];
  }
  /// psi_i + eps O1 (+ eps^2 O2 when order >= 2) as a term list.
  SpinlessOperator to_operator(double epsilon, int order) const;
};

DressedOperator build_dressed(const SpinlessPerturbation& pert, int mode);

/// || (psi_i + eps O1 [+ eps^2 O2]) Psi0(eps) || with Psi0 the exact normalized
/// ground state of H0 + eps V. order is 1 or 2.
double residual_norm(const SpinlessPerturbation& pert, int mode, double epsilon, int order = 2);

/// Same, but only the components of the residual with the given excitation
/// number (basis states of that particle count).
double residual_norm_sector(const SpinlessPerturbation& pert, int mode, double epsilon,
                            int order, int excitations);

}  // namespace qsos
