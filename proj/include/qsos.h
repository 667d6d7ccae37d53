/* qsos — self-consistent sum-of-squares lower bounds for quartic fermionic
 * Hamiltonians.
 *
 * C API of the shared library. All functions return a qsos_status; outputs go
 * through pointers. Objects are opaque handles freed with the matching _free
 * call. Strings returned through char** are malloc'd by the library and freed
 * with qsos_string_free. Handles are immutable after creation, so they may be
 * shared across threads; the last-error message is thread-local.
 */
#ifndef QSOS_H
#define QSOS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qsos_status {
  QSOS_OK = 0,
  QSOS_ERR_INVALID_ARGUMENT,
  QSOS_ERR_PARSE,
  QSOS_ERR_NON_ORTHOGONAL_BASIS,
  QSOS_ERR_SHAPE_MISMATCH,
  QSOS_ERR_DIMENSION_TOO_LARGE,
  QSOS_ERR_INDEX_OUT_OF_RANGE,
  QSOS_ERR_NON_HERMITIAN,
  QSOS_ERR_DEGENERATE_GROUND_STATE,
  QSOS_ERR_GAP_TOO_SMALL,
  QSOS_ERR_OVERLAP_NOT_POSITIVE,
  QSOS_ERR_ODD_ORBITAL_COUNT,
  QSOS_ERR_ROOT_FIND_FAILURE,
  QSOS_ERR_INFEASIBLE,
  QSOS_ERR_IO,
  QSOS_ERR_INTERNAL
} qsos_status;

typedef struct qsos_hamiltonian qsos_hamiltonian;
typedef struct qsos_solve_result qsos_solve_result;

const char* qsos_version(void);
/* Message for the most recent failure on this thread ("" if none). */
const char* qsos_last_error(void);
void qsos_string_free(char* s);

/* ---- Hamiltonians (spinful-v1 JSON wire format) ---- */
qsos_status qsos_hamiltonian_parse(const char* json_text, qsos_hamiltonian** out);
qsos_status qsos_hamiltonian_to_json(const qsos_hamiltonian* h, char** out_json);
qsos_status qsos_hamiltonian_orbitals(const qsos_hamiltonian* h, int* out_n_o);
void qsos_hamiltonian_free(qsos_hamiltonian* h);

/* ---- Model generators ---- */
qsos_status qsos_model_gaussian(int n_o, double epsilon, uint64_t seed, qsos_hamiltonian** out);
qsos_status qsos_model_singlet_hopping(int n_o, double scale, uint64_t seed,
                                       qsos_hamiltonian** out);
qsos_status qsos_model_two_orbital_singlet(double epsilon, double u, qsos_hamiltonian** out);
/* {"family", "n_o", "epsilon", "u", "seed"}; spinful families only. */
qsos_status qsos_model_from_spec_json(const char* spec_json, qsos_hamiltonian** out);
/* The 4-mode spinless toy as spinless-v1 JSON. */
qsos_status qsos_model_toy_spinless_json(double epsilon, char** out_json);

/* ---- Self-consistent solver ---- */
typedef struct qsos_solver_config {
  double damping_f;       /* mixing weight in (0, 1], default 0.5 */
  double damping_f_final; /* > 0 enables a linear ramp; default 0 (constant) */
  double tol;             /* residual threshold, default 1e-5 */
  int max_iter;           /* default 40 */
  double min_gap;         /* guide eigenvalue floor, default 1e-8 */
  double overlap_floor;   /* tau overlap floor, default 1e-10 */
} qsos_solver_config;

void qsos_solver_config_init(qsos_solver_config* cfg);

qsos_status qsos_solve(const qsos_hamiltonian* h, const qsos_solver_config* cfg,
                       qsos_solve_result** out);
double qsos_result_bound(const qsos_solve_result* r);
double qsos_result_err(const qsos_solve_result* r);
double qsos_result_certified_bound(const qsos_solve_result* r);
int qsos_result_iterations(const qsos_solve_result* r);
int qsos_result_converged(const qsos_solve_result* r);
double qsos_result_wall_time(const qsos_solve_result* r);
/* Copies up to capacity (bound, err) pairs; *out_len gets the history length. */
qsos_status qsos_result_history(const qsos_solve_result* r, double* bounds, double* errs,
                                int capacity, int* out_len);
qsos_status qsos_result_to_json(const qsos_solve_result* r, char** out_json);
void qsos_result_free(qsos_solve_result* r);

/* ---- Desk-scale oracles ---- */
qsos_status qsos_exact_ground_energy(const qsos_hamiltonian* h, double* out);
/* Accepts spinful-v1 or spinless-v1. */
qsos_status qsos_exact_ground_energy_json(const char* json_text, double* out);
/* out_e = {e0, e1, e2, e3}: series coefficients with the quartic part of h as
 * the perturbation. */
qsos_status qsos_pt_energies(const qsos_hamiltonian* h, double out_e[4]);

/* ---- 4-mode toy model ---- */
typedef struct qsos_toy_result {
  double a, b, e, s;
  double lambda;       /* certified scalar (fragment bound / exact energy) */
  double exact_energy; /* oracle ground energy of the matched Hamiltonian */
  int has_s;           /* 1 for the generalized decomposition */
  int feasible;
} qsos_toy_result;

qsos_status qsos_toy_fragment(double epsilon, qsos_toy_result* out);
/* QSOS_ERR_INFEASIBLE when no real decomposition reaches tolerance. */
qsos_status qsos_toy_general(double mu, double j_coupling, qsos_toy_result* out);

/* ---- Dressed operators ---- */
/* Seeded random spinless perturbation (families: bit 1 = four-annihilation,
 * bit 2 = one-creation, bit 4 = two-creation); residual of the dressed
 * annihilator at the given order (1 or 2), plus the component with
 * `excitations` particles (pass -1 to skip; out_sector then receives 0). */
qsos_status qsos_dressed_residual(int n_modes, uint64_t seed, unsigned families, int mode,
                                  double epsilon, int order, int excitations, double* out_residual,
                                  double* out_sector);

/* ---- Sweep harness ---- */
/* Runs the sweep described by a JSON object:
 *   {"family", "n_o", "epsilons": [..], "seeds": [..],
 *    "config": {solver fields, optional}, "with_exact": bool, "with_pt": bool,
 *    "workers": int}
 * and returns the records as a JSON array. */
qsos_status qsos_sweep_run_json(const char* sweep_json, char** out_records_json);
/* Renders a records array (as produced above) as CSV. */
qsos_status qsos_records_to_csv(const char* records_json, char** out_csv);

#ifdef __cplusplus
}
#endif

#endif /* QSOS_H */
