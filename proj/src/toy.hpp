#pragma once

#include <optional>

#include "fock.hpp"

namespace qsos {

struct ToySolveResult {
  double a = 0;
  double b = 0;
  double e = 0;            // fragment normalization; unused by solve_general
  std::optional<double> s; // generalized decomposition weight
  double lambda = 0;       // certified scalar: the bound (fragment) or the exact
                           // ground energy reproduced by the decomposition
  double exact_energy = 0; // oracle ground energy of the matched Hamiltonian
  bool feasible = true;
};

/// Closed-form degree-6 fragment for the 4-mode toy at coupling eps: solves
///   2eb + ea^2 + 2eb^2 = 0,   4ea + 12eab = eps,   3eb^2 - 3ea^2 + e = 1
/// by continuation plus damped Newton and returns lambda = -4ea^2 (equal to
/// -eps^2/4 for every eps). Throws RootFindFailure if no root reaches 1e-10.
ToySolveResult solve_fragment(double epsilon);

/// Generalized decomposition for H = mu sum_i n_i + J (psi_1 psi_2 psi_3 psi_4
/// + h.c.): finds (a, b, s) whose sum-of-squares matches H up to a scalar with
/// coefficient residual < 1e-8. The returned lambda (the negated scalar offset)
/// equals the exact ground energy since both squares annihilate the true ground
/// state. Throws Infeasible when no real solution reaches tolerance, which
/// happens for |J/mu| beyond roughly 9.7.
ToySolveResult solve_general(double mu, double j_coupling);

/// Largest feasible |J/mu| located by bisection between a feasible and an
/// infeasible coupling.
double feasibility_boundary(double lo = 8.0, double hi = 12.0, double tol = 0.05);

/// mu sum n_i + J (psi_1 psi_2 psi_3 psi_4 + h.c.) as an explicit term list.
SpinlessOperator toy_hamiltonian(double mu, double j_coupling);

}  // namespace qsos
