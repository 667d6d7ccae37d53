#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "fock.hpp"
#include "hamiltonian.hpp"

namespace qsos {

/// Standard normal variates from a fixed, portable pipeline: mt19937_64 bits
/// mapped to uniforms in (0, 1] via (x >> 11) * 2^-53, combined pairwise by the
/// Box-Muller transform. The draw sequence is part of the fixture contract.
class NormalSampler {
 public:
  explicit NormalSampler(std::uint64_t seed) : eng_(seed) {}
  double next();
  /// One raw uniform draw in (0, 1] (consumes a single engine step).
  double uniform();

 private:
  std::mt19937_64 eng_;
  bool has_cached_ = false;
  double cached_ = 0;
};

struct ModelSpec {
  std::string family;  // gaussian-quartic | singlet-hopping | two-orbital-singlet |
                       // toy-spinless-quartic
  int n_o = 0;
  double epsilon = 0;  // coupling; reused as the coefficient scale for singlet-hopping
  double u = 0;        // density-density strength (two-orbital-singlet only)
  std::uint64_t seed = 0;
};

/// h0 = diag(+1 x n_o/2, -1 x n_o/2); G = eps (A + A-reversed)/sqrt(2) with
/// A i.i.d. standard normal drawn in lexicographic (i,j,k,l) order.
SpinfulHamiltonian gaussian_model(int n_o, double epsilon, std::uint64_t seed);

/// H = n_0 - n_1 + eps sum_{s,t}(psi^+_{0s} psi_{1s} psi^+_{0t} psi_{1t} + h.c.)
///   + u n_0 n_1.
SpinfulHamiltonian two_orbital_singlet(double epsilon, double u);

/// Gaussian-model h0 with only pair-hop entries G[i,j,i,j] (i != j), i.i.d.
/// normal times scale, Hermitized.
SpinfulHamiltonian singlet_hopping_model(int n_o, double scale, std::uint64_t seed);

/// 4-mode spinless toy: sum_i n_i + eps (psi^+_1 psi^+_2 psi^+_3 psi^+_4 + h.c.).
SpinlessOperator toy_spinless_quartic(double epsilon);

/// Dispatch on spec.family for the spinful families.
SpinfulHamiltonian generate(const ModelSpec& spec);

}  // namespace qsos
