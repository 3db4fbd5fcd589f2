/* projgap -- adiabatic evolution with a rank-one projector target Hamiltonian.
 *
 * C interface to the projgap shared library.  The library studies the sweep
 * H(mu) = (1-mu)*H_s - mu*|t><t| for an initial Hamiltonian H_s given by its
 * spectrum xi[0..n-1] (xi[0] = 0, ascending) and the overlap magnitudes
 * |<level|t>| of the target state in the H_s eigenbasis.  It provides exact
 * eigenstructure via the rank-one secular equation, closed-form crossover and
 * minimum-gap estimates, time-dependent Schroedinger propagation and the
 * sudden-switch / partial-sweep / measure search pipeline.
 *
 * All functions returning pg_status set a thread-local error message
 * retrievable with pg_last_error() on failure.  Problem instances are opaque
 * handles; they are immutable after construction and safe to share between
 * threads.
 */

#ifndef PROJGAP_H
#define PROJGAP_H

#include <stdint.h>

#if defined(_WIN32)
#define PG_API __declspec(dllexport)
#else
#define PG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pg_status {
  PG_OK = 0,
  PG_ERR_INVALID_ARGUMENT = 1,
  PG_ERR_FORMAT = 2,           /* instance file malformed or violates invariants */
  PG_ERR_DOMAIN = 3,           /* parameter outside the mathematical domain */
  PG_ERR_CAP_EXCEEDED = 4,     /* search hit the configured cap; result holds best found */
  PG_ERR_IO = 5,
  PG_ERR_POLE = 6,             /* secular function evaluated at an active pole */
  PG_ERR_DEGENERATE = 7,       /* instance degenerate for this operation (e.g. alpha = 0) */
  PG_ERR_INTERNAL = 8
} pg_status;

typedef struct pg_instance pg_instance;

/* ---- library ---- */

PG_API const char *pg_version(void);
/* Message for the most recent failing call on this thread ("" if none). */
PG_API const char *pg_last_error(void);

/* ---- instances ---- */

/* Search instance: H_s = 1 - |u><u| over an n-dimensional space, target a
 * basis state; xi = [0,1,...,1], overlaps [1/sqrt(n), sqrt(1-1/n), 0, ...]. */
PG_API pg_status pg_instance_grover(int64_t n, pg_instance **out);

/* Seeded random test instance: xi[1..] i.i.d. uniform on (xi_max/2, xi_max]
 * sorted, ground overlap alpha, remaining target weight spread by
 * squared-normalized uniform draws.  Bit-deterministic for a fixed seed. */
PG_API pg_status pg_instance_random(int64_t n, uint64_t seed, double xi_max,
                                    double alpha, pg_instance **out);

/* Instance from explicit arrays (copied). */
PG_API pg_status pg_instance_create(const double *xi, const double *t_overlap,
                                    int64_t n, pg_instance **out);

/* Time-reversed problem (-|s><s| -> general final Hamiltonian): pass the
 * final Hamiltonian's spectrum and the start state's overlaps.  The handle is
 * flagged so reporting maps mu -> 1-mu back to the original parameterization. */
PG_API pg_status pg_instance_reversed(const double *ht_spectrum,
                                      const double *s_overlap, int64_t n,
                                      pg_instance **out);

PG_API pg_status pg_instance_load(const char *path, pg_instance **out);
PG_API pg_status pg_instance_save(const pg_instance *inst, const char *path);
PG_API void pg_instance_free(pg_instance *inst);

PG_API int64_t pg_instance_size(const pg_instance *inst);
PG_API int pg_instance_is_reversed(const pg_instance *inst);
PG_API double pg_instance_alpha(const pg_instance *inst);
/* Copy xi / t_overlap into caller buffers of length pg_instance_size(). */
PG_API pg_status pg_instance_xi(const pg_instance *inst, double *out);
PG_API pg_status pg_instance_t_overlap(const pg_instance *inst, double *out);

PG_API pg_status pg_instance_rescale(const pg_instance *inst, double factor,
                                     pg_instance **out);

/* sum_{l>=1} t_overlap[l]^2 / xi[l]^p, p in {1,2}. */
PG_API pg_status pg_overlap_moment(const pg_instance *inst, int p, double *out);

typedef struct pg_assumption_thresholds {
  double alpha_ratio_max;  /* alpha/xi1 must not exceed this (default 0.1) */
  double spread_ratio_min; /* xi1/xi[n-1] must reach this (default 0.1) */
  double top_level_max;    /* xi[n-1] must not exceed this (default 10) */
} pg_assumption_thresholds;

typedef struct pg_assumption_report {
  double alpha_over_xi1;
  double xi1_over_xin1;
  double xin1;
  int alpha_ok;
  int spread_ok;
  int top_ok;
  int all_ok;
} pg_assumption_report;

/* thresholds may be NULL for the defaults. */
PG_API pg_status pg_check_assumptions(const pg_instance *inst,
                                      const pg_assumption_thresholds *thresholds,
                                      pg_assumption_report *out);

/* ---- exact spectrum ---- */

/* Secular function sum_l t_l^2/(xi_l(1-mu) - energy) - 1/mu; mu in (0,1]. */
PG_API pg_status pg_secular_value(const pg_instance *inst, double mu,
                                  double energy, double *out);

/* All n eigenvalues of H(mu), ascending, into a caller buffer of length n. */
PG_API pg_status pg_exact_eigenvalues(const pg_instance *inst, double mu,
                                      double *out);

typedef struct pg_ground_state {
  double mu;
  double energy;          /* E0 */
  double excited_energy;  /* E1 */
  double gap;             /* E1 - E0 */
  double overlap_s;       /* |<s|E0>| */
  double overlap_t;       /* |<t|E0>| */
  int gap_tie;            /* E1 tied with the next level within 1e-12 */
} pg_ground_state;

PG_API pg_status pg_exact_ground(const pg_instance *inst, double mu,
                                 pg_ground_state *out);

PG_API pg_status pg_exact_gap(const pg_instance *inst, double mu, double *out);

typedef struct pg_gap_minimum {
  double mu;
  double gap;
} pg_gap_minimum;

/* Scan the exact gap on a uniform grid (grid_points = 0 selects a grid dense
 * enough for the crossover dip) and golden-section refine to refine_tol
 * (<= 0 selects 1e-10). */
PG_API pg_status pg_min_gap_scan(const pg_instance *inst, int64_t grid_points,
                                 double refine_tol, pg_gap_minimum *out);

/* Dense n x n symmetric eigensolver (cyclic Jacobi), independent of the
 * secular path.  matrix is row-major n*n; values ascending; vectors may be
 * NULL, otherwise column k (stride n) is the k-th eigenvector. */
PG_API pg_status pg_dense_eigensolver(const double *matrix, int64_t n,
                                      double *values, double *vectors);

/* Row-major H(mu) into a caller buffer of length n*n. */
PG_API pg_status pg_build_hmu(const pg_instance *inst, double mu, double *out);

/* ---- closed-form crossover analysis ---- */

typedef struct pg_analytic_profile {
  double mu;
  double detuning;       /* effective two-level detuning A */
  double coupling_scale; /* response coefficient B; alpha/B is the gap scale */
  double eta;            /* mixing angle in (0, pi/2) */
  double e_minus;        /* model ground energy */
  double e_plus;         /* model first excited energy */
  double gap;            /* 2 alpha csc(2 eta) / B */
  double epsilon;        /* relative offset 1 - mu_star/mu */
} pg_analytic_profile;

PG_API pg_status pg_profile_at(const pg_instance *inst, double mu,
                               pg_analytic_profile *out);

typedef struct pg_summary {
  double c;
  double mu_star;            /* crossover point */
  double omega;              /* crossover sharpness */
  double mu_min;             /* model location of the minimum gap */
  double g_min;              /* model minimum gap */
  double mu_minus;           /* sweep window [mu_minus, mu_plus] */
  double mu_plus;
  double plateau_overlap;    /* |<t|ground>| reached at mu_plus, leading order */
  double p_success;          /* success probability of the partial pipeline */
  double partial_time_bound; /* leading-order time bound of the partial pipeline */
  double h_distance_norm;    /* ||H_s - H_t|| (spectral norm) */
  double full_time_bound;    /* h_distance_norm / g_min^2 */
  int margin_c_omega_ok;     /* c <= omega/4 */
  int margin_c_alpha_ok;     /* c <= xi1/(4 alpha) */
} pg_summary;

PG_API pg_status pg_summarize(const pg_instance *inst, double c, pg_summary *out);

typedef struct pg_overlap_estimate {
  double overlap_s;      /* sin(eta) */
  double overlap_t;      /* (1/mu - 1) cos(eta) / sqrt(moment2) */
  int outside_validity;  /* mu farther than 4c/omega from the crossover */
} pg_overlap_estimate;

PG_API pg_status pg_ground_overlaps_analytic(const pg_instance *inst, double mu,
                                             double c, pg_overlap_estimate *out);

typedef struct pg_validity {
  double lhs;          /* alpha csc(2 eta) */
  double rhs;          /* xi1 sqrt(moment2) / 2 */
  double ratio;
  double margin;       /* threshold - ratio */
  double window_bound; /* alpha sqrt(1+c^2), the in-window cap on lhs */
  int pass;
} pg_validity;

PG_API pg_status pg_validity_check(const pg_instance *inst, double mu, double c,
                                   double threshold, pg_validity *out);

/* ---- dynamics ---- */

enum {
  PG_SCHEDULE_FULL_LINEAR = 0,
  PG_SCHEDULE_PARTIAL = 1,
  PG_SCHEDULE_LOCAL_ADAPTIVE = 2
};

typedef struct pg_schedule {
  int kind;
  double gamma;       /* total evolution time (hbar = 1); 0 = no evolution */
  int64_t steps;      /* >= 100 */
  double c;           /* partial window parameter */
  int local_exact_gap; /* pace the local schedule by the exact gap */
} pg_schedule;

PG_API pg_status pg_schedule_mu(const pg_instance *inst, const pg_schedule *s,
                                double tau, double *out);

typedef struct pg_evolution_result {
  double final_overlap_t;      /* |<t|psi(Gamma)>| */
  double final_overlap_ground; /* fidelity with the instantaneous ground state */
  double min_inst_fidelity;    /* minimum of that fidelity along the path */
  double unitarity_defect;     /* max | ||psi|| - 1 | over the path */
} pg_evolution_result;

/* initial_re/initial_im of length n, or both NULL to start from |s>.
 * The trace buffers, when non-NULL, must hold steps+1 entries (1 when
 * gamma = 0) and receive the per-boundary trajectory. */
PG_API pg_status pg_propagate(const pg_instance *inst, const pg_schedule *s,
                              const double *initial_re, const double *initial_im,
                              pg_evolution_result *out, double *trace_tau,
                              double *trace_mu, double *trace_ground_fidelity,
                              double *trace_overlap_t, double *trace_norm_defect);

typedef struct pg_trial_stats {
  int64_t trials;
  int64_t successes;
  double estimated_p;
  double std_error;
  double deterministic_p; /* |<t|psi(Gamma)>|^2 for the coherent pipeline */
} pg_trial_stats;

/* Sudden switch to H(mu-), linear sweep to H(mu+) over gamma, projective
 * measurement of |t>; repeated `trials` times with the seeded generator. */
PG_API pg_status pg_run_partial_algorithm(const pg_instance *inst, double c,
                                          double gamma, int64_t steps,
                                          int64_t trials, uint64_t seed,
                                          pg_trial_stats *out);

typedef struct pg_required_time_result {
  double gamma;
  double achieved_p;
  int64_t evaluations;
  int nonmonotone; /* success probability dipped during the bracket search */
  int capped;      /* gamma_cap hit; gamma/achieved_p hold the best found */
} pg_required_time_result;

/* Smallest gamma (doubling then bisection, relative tolerance rel_tol,
 * default 0.05 when <= 0) whose deterministic success probability reaches
 * target_p.  Returns PG_ERR_CAP_EXCEEDED with the best point found when
 * gamma_cap (default 1e7 when <= 0) is hit. */
PG_API pg_status pg_required_time(const pg_instance *inst, const pg_schedule *base,
                                  double target_p, double rel_tol, double gamma_cap,
                                  pg_required_time_result *out);

/* Exact large-gamma success plateau of the partial pipeline (projection
 * product through the exact ground states at the window edges). */
PG_API pg_status pg_plateau_success(const pg_instance *inst, double c, double *out);

/* ---- experiment runners ---- */

typedef struct pg_scaling_point {
  int64_t n;
  double alpha;
  double gamma_required;
  double achieved_p;
  double target_p;
} pg_scaling_point;

typedef struct pg_scaling_fit {
  double exponent;  /* log(gamma) vs log(alpha) slope */
  double intercept;
  double r_squared;
  int capped;
  int64_t n_points;
} pg_scaling_fit;

/* Search-instance scaling experiment over n_values (>= 3 entries).  For the
 * partial schedule target_p is a fraction of each size's exact plateau;
 * otherwise it is absolute.  points must hold n_count entries.  Capped points
 * return PG_ERR_CAP_EXCEEDED with the fit over the remaining points. */
PG_API pg_status pg_run_scaling(const int64_t *n_values, int64_t n_count,
                                const pg_schedule *base, double target_p,
                                double rel_tol, double gamma_cap,
                                pg_scaling_fit *fit, pg_scaling_point *points);

typedef struct pg_validation_options {
  int64_t dense_max_n; /* dense-oracle size cap; larger instances truncated (default 16) */
  int64_t mu_samples;  /* mu grid size for the cross-checks (default 9) */
  int64_t sweep;       /* extra random instances for the moment-inequality sweep */
  double oracle_tol;   /* eigenvalue agreement (default 1e-10) */
  double overlap_tol;  /* ground-overlap agreement (default 1e-8) */
  double c;            /* window parameter for the analytic error table (default 4) */
} pg_validation_options;

typedef struct pg_validation_report {
  int all_ok;              /* every oracle/property check passed */
  double max_eigenvalue_err;
  double max_overlap_err;
  int eigenvalues_ok;
  int overlaps_ok;
  int interlacing_ok;
  int one_negative_ok;
  int cauchy_schwarz_ok;
  int64_t sweep_violations;
  int64_t table_rows;      /* rows available to pg_analytic_error_table */
  pg_assumption_report assumptions;
} pg_validation_report;

/* options may be NULL for defaults. */
PG_API pg_status pg_validate(const pg_instance *inst,
                             const pg_validation_options *options,
                             pg_validation_report *out);

/* Analytic-vs-exact ground-state error table over the window [mu-, mu+]:
 * n_rows points; each output buffer, when non-NULL, must hold n_rows. */
PG_API pg_status pg_analytic_error_table(const pg_instance *inst, double c,
                                         int64_t n_rows, double *mu,
                                         double *energy_err, double *overlap_s_err,
                                         double *overlap_t_err, int *validity_pass);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PROJGAP_H */
