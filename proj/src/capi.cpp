#include "qsos.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <sstream>
#include <string>

#include "bench.hpp"
#include "dressed.hpp"
#include "errors.hpp"
#include "fock.hpp"
#include "json_io.hpp"
#include "models.hpp"
#include "solver.hpp"
#include "toy.hpp"

using namespace qsos;

struct qsos_hamiltonian {
  SpinfulHamiltonian h;
};
struct qsos_solve_result {
  SolveResult r;
};

namespace {

thread_local std::string g_last_error;

qsos_status status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return QSOS_ERR_INVALID_ARGUMENT;
    case ErrorCode::NonOrthogonalBasis: return QSOS_ERR_NON_ORTHOGONAL_BASIS;
    case ErrorCode::ShapeMismatch: return QSOS_ERR_SHAPE_MISMATCH;
    case ErrorCode::DimensionTooLarge: return QSOS_ERR_DIMENSION_TOO_LARGE;
    case ErrorCode::IndexOutOfRange: return QSOS_ERR_INDEX_OUT_OF_RANGE;
    case ErrorCode::NonHermitian: return QSOS_ERR_NON_HERMITIAN;
    case ErrorCode::DegenerateGroundState: return QSOS_ERR_DEGENERATE_GROUND_STATE;
    case ErrorCode::GapTooSmall: return QSOS_ERR_GAP_TOO_SMALL;
    case ErrorCode::OverlapNotPositive: return QSOS_ERR_OVERLAP_NOT_POSITIVE;
    case ErrorCode::OddOrbitalCount: return QSOS_ERR_ODD_ORBITAL_COUNT;
    case ErrorCode::RootFindFailure: return QSOS_ERR_ROOT_FIND_FAILURE;
    case ErrorCode::Infeasible: return QSOS_ERR_INFEASIBLE;
    case ErrorCode::Io: return QSOS_ERR_IO;
    case ErrorCode::Parse: return QSOS_ERR_PARSE;
  }
  return QSOS_ERR_INTERNAL;
}

/// Runs fn, translating exceptions into status codes + the thread-local
/// message.
template <class Fn>
qsos_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return QSOS_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QSOS_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* qsos_version(void) { return "0.1.0"; }

const char* qsos_last_error(void) { return g_last_error.c_str(); }

void qsos_string_free(char* s) { std::free(s); }

qsos_status qsos_hamiltonian_parse(const char* json_text, qsos_hamiltonian** out) {
  if (!json_text || !out) return QSOS_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = new qsos_hamiltonian{spinful_from_json(parse_json(json_text))}; });
}

qsos_status qsos_hamiltonian_to_json(const qsos_hamiltonian* h, char** out_json) {
  if (!h || !out_json) return QSOS_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out_json = dup_string(to_json(h->h).dump()); });
}

qsos_status qsos_hamiltonian_orbitals(const qsos_hamiltonian* h, int* out_n_o) {
  if (!h || !out_n_o) return QSOS_ERR_INVALID_ARGUMENT;
  *out_n_o = h->h.n_o;
  return QSOS_OK;
}

void qsos_hamiltonian_free(qsos_hamiltonian* h) { delete h; }

qsos_status qsos_model_gaussian(int n_o, double epsilon, uint64_t seed, qsos_hamiltonian** out) {
  if (!out) return QSOS_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = new qsos_hamiltonian{gaussian_model(n_o, epsilon, seed)}; });
}

qsos_status qsos_model_singlet_hopping(int n_o, double scale, uint64_t seed,
                                       qsos_hamiltonian** out) {
  if (!out) return QSOS_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = new qsos_hamiltonian{singlet_hopping_model(n_o, scale, seed)}; });
}

qsos_status qsos_model_two_orbital_singlet(double epsilon, double u, qsos_hamiltonian** out) {
  if (!out) return QSOS_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = new qsos_hamiltonian{two_orbital_singlet(epsilon, u)}; });
}

qsos_status qsos_model_from_spec_json(const char* spec_json, qsos_hamiltonian** out) {
  if (!spec_json || !out) return QSOS_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = new qsos_hamiltonian{generate(model_spec_from_json(parse_json(spec_json)))};
  });
}

qsos_status qsos_model_toy_spinless_json(double epsilon, char** out_json) {
  if (!out_json) return QSOS_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out_json = dup_string(to_json(toy_spinless_quartic(epsilon)).dump()); });
}

void qsos_solver_config_init(qsos_solver_config* cfg) {
  if (!cfg) return;
  SolverConfig d;
  cfg->damping_f = d.damping_f;
  cfg->damping_f_final = d.damping_f_final;
  cfg->tol = d.tol;
  cfg->max_iter = d.max_iter;
  cfg->min_gap = d.min_gap;
  cfg->overlap_floor = d.overlap_floor;
}

qsos_status qsos_solve(const qsos_hamiltonian* h, const qsos_solver_config* cfg,
                       qsos_solve_result** out) {
  if (!h || !out) return QSOS_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    SolverConfig c;
    if (cfg) {
      c.damping_f = cfg->damping_f;
      c.damping_f_final = cfg->damping_f_final;
      c.tol = cfg->tol;
      c.max_iter = cfg->max_iter;
      c.min_gap = cfg->min_gap;
      c.overlap_floor = cfg->overlap_floor;
    }
    *out = new qsos_solve_result{solve(h->h, c)};
  });
}

double qsos_result_bound(const qsos_solve_result* r) { return r ? r->r.bound : 0; }
double qsos_result_err(const qsos_solve_result* r) { return r ? r->r.err : 0; }
double qsos_result_certified_bound(const qsos_solve_result* r) {
  return r ? r->r.certified_bound : 0;
}
int qsos_result_iterations(const qsos_solve_result* r) { return r ? r->r.iterations : 0; }
int qsos_result_converged(const qsos_solve_result* r) { return r && r->r.converged ? 1 : 0; }
double qsos_result_wall_time(const qsos_solve_result* r) { return r ? r->r.wall_time_s : 0; }

qsos_status qsos_result_history(const qsos_solve_result* r, double* bounds, double* errs,
                                int capacity, int* out_len) {
  if (!r || !out_len) return QSOS_ERR_INVALID_ARGUMENT;
  *out_len = static_cast<int>(r->r.history.size());
  const int n = std::min<int>(capacity, *out_len);
  for (int i = 0; i < n; ++i) {
    if (bounds) bounds[i] = r->r.history[i].bound;
    if (errs) errs[i] = r->r.history[i].err;
  }
  return QSOS_OK;
}

qsos_status qsos_result_to_json(const qsos_solve_result* r, char** out_json) {
  if (!r || !out_json) return QSOS_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out_json = dup_string(to_json(r->r).dump()); });
}

void qsos_result_free(qsos_solve_result* r) { delete r; }

qsos_status qsos_exact_ground_energy(const qsos_hamiltonian* h, double* out) {
  if (!h || !out) return QSOS_ERR_INVALID_ARGUMENT;
  return guarded([&] { *out = spinful_ground_energy(h->h); });
}

qsos_status qsos_exact_ground_energy_json(const char* json_text, double* out) {
  if (!json_text || !out) return QSOS_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    auto parsed = hamiltonian_from_json(parse_json(json_text));
    if (std::holds_alternative<SpinfulHamiltonian>(parsed))
      *out = spinful_ground_energy(std::get<SpinfulHamiltonian>(parsed));
    else
      *out = ground_energy(build_spinless(std::get<SpinlessOperator>(parsed)));
  });
}

qsos_status qsos_pt_energies(const qsos_hamiltonian* h, double out_e[4]) {
  if (!h || !out_e) return QSOS_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    SpinfulHamiltonian h0 = h->h;
    h0.g = Tensor4(h->h.n_o);
    SpinfulHamiltonian v = h->h;
    v.scalar = 0;
    v.h0.setZero();
    PtEnergies pt = rs_pt(h0, v);
    out_e[0] = pt.e0;
    out_e[1] = pt.e1;
    out_e[2] = pt.e2;
    out_e[3] = pt.e3;
  });
}

qsos_status qsos_toy_fragment(double epsilon, qsos_toy_result* out) {
  if (!out) return QSOS_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    ToySolveResult r = solve_fragment(epsilon);
    *out = {r.a, r.b, r.e, 0.0, r.lambda, r.exact_energy, 0, 1};
  });
}

qsos_status qsos_toy_general(double mu, double j_coupling, qsos_toy_result* out) {
  if (!out) return QSOS_ERR_INVALID_ARGUMENT;
  qsos_status st = guarded([&] {
    ToySolveResult r = solve_general(mu, j_coupling);
    *out = {r.a, r.b, r.e, r.s.value_or(0.0), r.lambda, r.exact_energy, r.s.has_value(), 1};
  });
  if (st == QSOS_ERR_INFEASIBLE) out->feasible = 0;
  return st;
}

qsos_status qsos_dressed_residual(int n_modes, uint64_t seed, unsigned families, int mode,
                                  double epsilon, int order, int excitations, double* out_residual,
                                  double* out_sector) {
  if (!out_residual || !out_sector) return QSOS_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    SpinlessPerturbation p = random_perturbation(n_modes, seed, families);
    *out_residual = residual_norm(p, mode, epsilon, order);
    *out_sector = excitations >= 0 ? residual_norm_sector(p, mode, epsilon, order, excitations)
                                   : 0.0;
  });
}

qsos_status qsos_sweep_run_json(const char* sweep_json, char** out_records_json) {
  if (!sweep_json || !out_records_json) return QSOS_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    nlohmann::json j = parse_json(sweep_json);
    SweepOptions opts;
    if (j.contains("config")) {
      const nlohmann::json& c = j["config"];
      opts.solver.damping_f = c.value("damping_f", opts.solver.damping_f);
      opts.solver.damping_f_final = c.value("damping_f_final", opts.solver.damping_f_final);
      opts.solver.tol = c.value("tol", opts.solver.tol);
      opts.solver.max_iter = c.value("max_iter", opts.solver.max_iter);
      opts.solver.min_gap = c.value("min_gap", opts.solver.min_gap);
      opts.solver.overlap_floor = c.value("overlap_floor", opts.solver.overlap_floor);
    }
    opts.with_exact = j.value("with_exact", true);
    opts.with_pt = j.value("with_pt", true);
    opts.workers = j.value("workers", 0);
    auto records = run_sweep(j.at("family").get<std::string>(), j.at("n_o").get<int>(),
                             j.at("epsilons").get<std::vector<double>>(),
                             j.at("seeds").get<std::vector<std::uint64_t>>(), opts);
    *out_records_json = dup_string(records_to_json(records).dump());
  });
}

qsos_status qsos_records_to_csv(const char* records_json, char** out_csv) {
  if (!records_json || !out_csv) return QSOS_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    auto records = records_from_json(parse_json(records_json));
    std::ostringstream ss;
    emit_csv(records, ss);
    *out_csv = dup_string(ss.str());
  });
}

}  // extern "C"
