#pragma once

#include <vector>

#include "hamiltonian.hpp"
#include "sos_step.hpp"

namespace qsos {

struct SolverConfig {
  double damping_f = 0.5;      // mixing weight for new iterates, in (0, 1]
  double damping_f_final = 0;  // if > 0, damping ramps linearly to this value
  double tol = 1e-5;           // stop when the coefficient residual drops below
  int max_iter = 40;
  double min_gap = 1e-8;
  double overlap_floor = 1e-10;
};

struct IterationRecord {
  double bound = 0;
  double err = 0;
};

struct SolveResult {
  double bound = 0;            // reported lower bound at the final iteration
  double err = 0;              // residual coefficient norm
  double certified_bound = 0;  // bound - err
  int iterations = 0;
  bool converged = false;
  std::vector<IterationRecord> history;
  double wall_time_s = 0;
};

/// Damped fixed-point iteration over effective_step. Starting from
/// trial = target and guide = target's quadratic part, each pass subtracts the
/// step's non-scalar shifts from the target to form a new trial candidate,
/// mixes it in with weight f, and stops once the weighted sum of absolute
/// coefficient changes (scalar + 2 quadratic + 4 quartic, matching the spin
/// multiplicities) falls below tol. Non-convergence is reported in the result,
/// not thrown.
SolveResult solve(const SpinfulHamiltonian& target, const SolverConfig& cfg = {});

}  // namespace qsos
