/*
 * topophase -- simulator for geometric phases of three-qubit photonic
 * states (signal polarization x signal OAM x idler polarization) under
 * cyclic local SU(2) evolutions, with coincidence-fringe synthesis,
 * entanglement invariants, and an experiment-description language.
 *
 * C API conventions:
 *   - Handles (topo_state, topo_path, topo_plan) are opaque; release
 *     them with the matching *_free function.
 *   - Every fallible function returns a topo_status; out-parameters are
 *     written only on TOPO_OK.
 *   - Returned strings are heap-allocated; release with
 *     topo_string_free.
 *   - topo_last_error() describes the most recent failure on the
 *     calling thread.
 */

#ifndef TOPOPHASE_H
#define TOPOPHASE_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum topo_status {
    TOPO_OK = 0,
    TOPO_ERR_INVALID_ARGUMENT = 1,
    TOPO_ERR_BASIS_MISMATCH = 2,
    TOPO_ERR_NOT_UNITARY = 3,
    TOPO_ERR_PARSE = 4,
    TOPO_ERR_SEMANTIC = 5,
    TOPO_ERR_NOT_CYCLIC = 6,
    TOPO_ERR_SNAP_FAILURE = 7,
    TOPO_ERR_BORDERLINE = 8,
    TOPO_ERR_SCENARIO_MISMATCH = 9,
    TOPO_ERR_IO = 10,
    TOPO_ERR_CHECK_FAILED = 11,
    TOPO_ERR_INTERNAL = 12
} topo_status;

typedef struct topo_state topo_state; /* three-qubit state (+ optional family info) */
typedef struct topo_path topo_path;   /* piecewise-linear phase path */
typedef struct topo_plan topo_plan;   /* compiled experiment plan */

const char* topo_version(void);
const char* topo_status_name(topo_status status);

/* Thread-local message for the last failing call on this thread. */
const char* topo_last_error(void);

void topo_string_free(char* s);
void topo_state_free(topo_state* s);
void topo_path_free(topo_path* p);
void topo_plan_free(topo_plan* p);

/* ---- states -------------------------------------------------------- */

/*
 * recipe: "x" | "ghz" | "bghz" | "prod_x" | "prod_bghz" (hyphens are
 * accepted too). alpha/beta are used by bghz and prod_bghz; pass zeros
 * elsewhere. The state is built through the preparation pipeline and
 * checked against its closed form.
 */
topo_status topo_state_prepare(const char* recipe, double alpha_re, double alpha_im,
                               double beta_re, double beta_im, topo_state** out);

/* JSON schema: {"basis": [tag x3], "amps": [[re, im] x 8]} with tags
 * "circular" | "linear" and slot order (signal-pol, signal-oam,
 * idler-pol). Loading accepts norm drift up to 1e-6 and renormalizes. */
topo_status topo_state_from_json(const char* json, topo_state** out);
topo_status topo_state_to_json(const topo_state* s, char** out);

/* out_re_im holds re,im interleaved for the 8 amplitudes in slot order. */
topo_status topo_state_amplitudes(const topo_state* s, double out_re_im[16]);

/* target: "circular" | "linear" applied to all three slots. */
topo_status topo_state_change_basis(const topo_state* s, const char* target, topo_state** out);

topo_status topo_state_overlap(const topo_state* a, const topo_state* b, double* out_re,
                               double* out_im);

/* Diagonal circular-basis gates U(phi) = diag(e^{i phi/2}, e^{-i phi/2})
 * applied per slot. */
topo_status topo_state_apply_diagonal(const topo_state* s, double phi_s, double phi_o,
                                      double phi_i, topo_state** out);

/* {"tangle", "purities", "slocc", "spectrum"}; spectrum is null unless
 * the state was built from a recipe (the family must be known
 * constructively). */
topo_status topo_invariants_json(const topo_state* s, char** out);

/* ---- paths --------------------------------------------------------- */

/* id: "ux1" | "ux2" | "ubghz". */
topo_status topo_path_named(const char* id, topo_path** out);

/* JSON schema: {"breakpoints": {"s": [[t, value], ...], "o": ..., "i": ...}};
 * every component starts at [0, 0]. */
topo_status topo_path_from_json(const char* json, topo_path** out);
topo_status topo_path_to_json(const topo_path* p, char** out);

/* Phase triple (phi_s, phi_o, phi_i) at normalized time t in [0, 1]. */
topo_status topo_path_eval(const topo_path* p, double t, double out_phi[3]);

/* ---- evolution ----------------------------------------------------- */

/*
 * Pancharatnam overlap at normalized time t: visibility V = |<psi|U|psi>|
 * and phase Phi = arg in [0, 2*pi). When V falls below 1e-9 the phase is
 * undefined: *out_phi_defined = 0 and *out_phi is set to 0.
 */
topo_status topo_pancharatnam(const topo_state* s, const topo_path* p, double t, double* out_v,
                              double* out_phi, int* out_phi_defined);

topo_status topo_is_cyclic(const topo_state* s, const topo_path* p, double tol, int* out);

/* Endpoint phase snapped to the nearest multiple of pi/2. Fails with
 * TOPO_ERR_NOT_CYCLIC or TOPO_ERR_SNAP_FAILURE (residual > snap_tol;
 * pass snap_tol <= 0 for the default 1e-6). */
topo_status topo_topological_phase(const topo_state* s, const topo_path* p, double snap_tol,
                                   double* out_phase, double* out_residual);

/* ---- fringes ------------------------------------------------------- */

/* Coincidence curve C(theta) = c0 (1 + Re(O(t) e^{i theta})) on an
 * n_theta-point uniform grid over [0, 2*pi). format: "json" | "csv". */
topo_status topo_fringe_curve(const topo_state* s, const topo_path* p, double t, int n_theta,
                              double c0, const char* format, char** out);

/*
 * Closed-form intensity formulas, C0 normalized to 1. id: "c0" | "c1" |
 * "c2" | "cp" | "c31" | "c3" | "c3p" (long names C0_X_GENERAL, ... are
 * accepted). "c0" and "cp" take the phase triple phi3; others take t.
 * Pass phi3 = NULL when unused.
 */
topo_status topo_closed_form(const char* id, double t, double theta, const double phi3[3],
                             double* out);

/* Compares the simulated curve for (s, p) against the printed formula
 * over a t_points x theta_points grid. JSON report:
 * {"formula", "max_abs_dev", "sign_flip_dev", "pass"}. */
topo_status topo_cross_validate(const topo_state* s, const topo_path* p, const char* formula,
                                int t_points, int theta_points, double tol, char** out);

/* figure: "balgor3" | "balgor4" | "balgor5"; format: "csv" | "json". */
topo_status topo_figure_data(const char* figure, const char* format, char** out);

/* ---- experiment scripts -------------------------------------------- */

/* Canonical formatting of a .topo script (comments dropped, symbolic
 * numbers preserved). name is used in error messages; may be NULL. */
topo_status topo_script_format(const char* text, const char* name, char** out);

topo_status topo_plan_compile(const char* text, const char* name, topo_plan** out);

/* Executes the plan. JSON: {"outputs": [{"kind", "dest", "format",
 * "content"}, ...]} in emit order; dest is null for default-sink emits. */
topo_status topo_plan_run(const topo_plan* p, char** out);

/* ---- verification -------------------------------------------------- */

/*
 * Runs the full verification matrix. format: "table" | "json".
 * default_tol <= 0 selects the standard 1e-9. Returns TOPO_OK when all
 * rows pass (recorded discrepancies do not fail), TOPO_ERR_CHECK_FAILED
 * otherwise; *out carries the report either way.
 */
topo_status topo_check_run(double default_tol, const char* format, char** out);

/* Parses arithmetic with pi literals ("-pi/2", "0.25", "2pi/3"). */
topo_status topo_parse_number(const char* text, double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* TOPOPHASE_H */
