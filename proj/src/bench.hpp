#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fock.hpp"
#include "models.hpp"
#include "solver.hpp"

namespace qsos {

/// One sweep entry: the model, the solver output, and (when the oracle cap
/// allows) the exact energy and perturbation-series coefficients.
struct RunRecord {
  ModelSpec spec;
  SolveResult result;
  std::optional<double> exact;
  std::optional<PtEnergies> pt;
  double solve_time_s = 0, exact_time_s = 0, pt_time_s = 0;
  std::optional<std::string> error;  // per-record failure; the sweep continues

  double pt_sum(int order) const;  // e0 + ... + e_order
};

struct SweepOptions {
  SolverConfig solver;
  bool with_exact = true;  // applied when n_o <= exact_cap
  bool with_pt = true;
  int exact_cap = 6;
  int workers = 0;  // 0: QSOS_WORKERS env var, else hardware concurrency
};

/// Runs family x epsilons x seeds on a bounded worker pool; records are
/// returned in input order regardless of scheduling.
std::vector<RunRecord> run_sweep(const std::string& family, int n_o,
                                 const std::vector<double>& epsilons,
                                 const std::vector<std::uint64_t>& seeds,
                                 const SweepOptions& opts = {});

struct SweepSummary {
  int total = 0;
  int failed = 0;
  int converged_1e5 = 0;
  int converged_1e4 = 0;  // final residual below 1e-4 regardless of the flag
  double fraction_1e5 = 0;
  double fraction_1e4 = 0;
};
SweepSummary summarize(const std::vector<RunRecord>& records);

/// CSV columns: family,n_o,epsilon,seed,bound,certified_bound,err,converged,
/// iterations,exact,pt1,pt2,pt3,err_bound,err_pt3,wall_time_s.
/// Optional fields are left empty.
void emit_csv(const std::vector<RunRecord>& records, std::ostream& out);

nlohmann::json records_to_json(const std::vector<RunRecord>& records);
std::vector<RunRecord> records_from_json(const nlohmann::json& j);

}  // namespace qsos
