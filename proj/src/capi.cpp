#include "projgap.h"

#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "dynamics.hpp"
#include "errors.hpp"
#include "instance.hpp"
#include "scaling.hpp"
#include "spectral.hpp"
#include "validate.hpp"

// The opaque handle wraps the immutable core instance.
struct pg_instance {
  projgap::Instance inst;
};

namespace {

thread_local std::string g_last_error;

pg_status to_status(projgap::ErrorCode code) {
  using projgap::ErrorCode;
  switch (code) {
  case ErrorCode::invalid_argument:
    return PG_ERR_INVALID_ARGUMENT;
  case ErrorCode::format:
    return PG_ERR_FORMAT;
  case ErrorCode::domain:
    return PG_ERR_DOMAIN;
  case ErrorCode::cap_exceeded:
    return PG_ERR_CAP_EXCEEDED;
  case ErrorCode::io:
    return PG_ERR_IO;
  case ErrorCode::pole:
    return PG_ERR_POLE;
  case ErrorCode::degenerate:
    return PG_ERR_DEGENERATE;
  }
  return PG_ERR_INTERNAL;
}

template <typename Fn> pg_status guarded(Fn &&fn) {
  try {
    fn();
    g_last_error.clear();
    return PG_OK;
  } catch (const projgap::CapExceeded &e) {
    g_last_error = e.what();
    return PG_ERR_CAP_EXCEEDED;
  } catch (const projgap::Error &e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc &) {
    g_last_error = "out of memory";
    return PG_ERR_INTERNAL;
  } catch (const std::exception &e) {
    g_last_error = e.what();
    return PG_ERR_INTERNAL;
  }
}

pg_status require(bool ok, const char *msg) {
  if (ok)
    return PG_OK;
  g_last_error = msg;
  return PG_ERR_INVALID_ARGUMENT;
}

pg_status wrap_instance(projgap::Instance inst, pg_instance **out) {
  *out = new pg_instance{std::move(inst)};
  return PG_OK;
}

projgap::Schedule to_schedule(const pg_schedule *s) {
  projgap::Schedule sched;
  switch (s->kind) {
  case PG_SCHEDULE_FULL_LINEAR:
    sched.kind = projgap::ScheduleKind::full_linear;
    break;
  case PG_SCHEDULE_PARTIAL:
    sched.kind = projgap::ScheduleKind::partial;
    break;
  case PG_SCHEDULE_LOCAL_ADAPTIVE:
    sched.kind = projgap::ScheduleKind::local_adaptive;
    break;
  default:
    projgap::fail(projgap::ErrorCode::invalid_argument,
                  "unknown schedule kind " + std::to_string(s->kind));
  }
  sched.gamma = s->gamma;
  sched.steps = s->steps;
  sched.c = s->c;
  sched.local_exact_gap = s->local_exact_gap != 0;
  return sched;
}

void fill_ground(const projgap::GroundState &g, pg_ground_state *out) {
  out->mu = g.mu;
  out->energy = g.energy;
  out->excited_energy = g.excited_energy;
  out->gap = g.gap;
  out->overlap_s = g.overlap_s;
  out->overlap_t = g.overlap_t;
  out->gap_tie = g.gap_tie ? 1 : 0;
}

void fill_assumptions(const projgap::AssumptionReport &r,
                      pg_assumption_report *out) {
  out->alpha_over_xi1 = r.alpha_over_xi1;
  out->xi1_over_xin1 = r.xi1_over_xin1;
  out->xin1 = r.xin1;
  out->alpha_ok = r.alpha_ok ? 1 : 0;
  out->spread_ok = r.spread_ok ? 1 : 0;
  out->top_ok = r.top_ok ? 1 : 0;
  out->all_ok = r.all_ok ? 1 : 0;
}

} // namespace

extern "C" {

const char *pg_version(void) { return "1.0.0"; }

const char *pg_last_error(void) { return g_last_error.c_str(); }

pg_status pg_instance_grover(int64_t n, pg_instance **out) {
  if (pg_status s = require(out != nullptr, "out must not be NULL"))
    return s;
  return guarded([&] { wrap_instance(projgap::make_grover(n), out); });
}

pg_status pg_instance_random(int64_t n, uint64_t seed, double xi_max,
                             double alpha, pg_instance **out) {
  if (pg_status s = require(out != nullptr, "out must not be NULL"))
    return s;
  return guarded(
      [&] { wrap_instance(projgap::make_random(n, seed, xi_max, alpha), out); });
}

pg_status pg_instance_create(const double *xi, const double *t_overlap,
                             int64_t n, pg_instance **out) {
  if (pg_status s = require(out && xi && t_overlap && n >= 0,
                            "xi, t_overlap and out must not be NULL"))
    return s;
  return guarded([&] {
    std::vector<double> x(xi, xi + n), t(t_overlap, t_overlap + n);
    wrap_instance(projgap::make_instance(std::move(x), std::move(t)), out);
  });
}

pg_status pg_instance_reversed(const double *ht_spectrum,
                               const double *s_overlap, int64_t n,
                               pg_instance **out) {
  if (pg_status s = require(out && ht_spectrum && s_overlap && n >= 0,
                            "spectrum, overlaps and out must not be NULL"))
    return s;
  return guarded([&] {
    std::vector<double> x(ht_spectrum, ht_spectrum + n);
    std::vector<double> t(s_overlap, s_overlap + n);
    wrap_instance(projgap::make_reversed(std::move(x), std::move(t)), out);
  });
}

pg_status pg_instance_load(const char *path, pg_instance **out) {
  if (pg_status s = require(out && path, "path and out must not be NULL"))
    return s;
  return guarded([&] { wrap_instance(projgap::load_instance(path), out); });
}

pg_status pg_instance_save(const pg_instance *inst, const char *path) {
  if (pg_status s = require(inst && path, "instance and path must not be NULL"))
    return s;
  return guarded([&] { projgap::save_instance(inst->inst, path); });
}

void pg_instance_free(pg_instance *inst) { delete inst; }

int64_t pg_instance_size(const pg_instance *inst) {
  return inst ? static_cast<int64_t>(inst->inst.size()) : 0;
}

int pg_instance_is_reversed(const pg_instance *inst) {
  return inst && inst->inst.reversed ? 1 : 0;
}

double pg_instance_alpha(const pg_instance *inst) {
  return inst ? inst->inst.alpha() : 0.0;
}

pg_status pg_instance_xi(const pg_instance *inst, double *out) {
  if (pg_status s = require(inst && out, "instance and out must not be NULL"))
    return s;
  std::memcpy(out, inst->inst.xi.data(), inst->inst.size() * sizeof(double));
  return PG_OK;
}

pg_status pg_instance_t_overlap(const pg_instance *inst, double *out) {
  if (pg_status s = require(inst && out, "instance and out must not be NULL"))
    return s;
  std::memcpy(out, inst->inst.t_overlap.data(),
              inst->inst.size() * sizeof(double));
  return PG_OK;
}

pg_status pg_instance_rescale(const pg_instance *inst, double factor,
                              pg_instance **out) {
  if (pg_status s = require(inst && out, "instance and out must not be NULL"))
    return s;
  return guarded(
      [&] { wrap_instance(projgap::rescale(inst->inst, factor), out); });
}

pg_status pg_overlap_moment(const pg_instance *inst, int p, double *out) {
  if (pg_status s = require(inst && out, "instance and out must not be NULL"))
    return s;
  return guarded([&] { *out = projgap::overlap_moment(inst->inst, p); });
}

pg_status pg_check_assumptions(const pg_instance *inst,
                               const pg_assumption_thresholds *thresholds,
                               pg_assumption_report *out) {
  if (pg_status s = require(inst && out, "instance and out must not be NULL"))
    return s;
  return guarded([&] {
    projgap::AssumptionThresholds t;
    if (thresholds) {
      t.alpha_ratio_max = thresholds->alpha_ratio_max;
      t.spread_ratio_min = thresholds->spread_ratio_min;
      t.top_level_max = thresholds->top_level_max;
    }
    fill_assumptions(projgap::check_assumptions(inst->inst, t), out);
  });
}

pg_status pg_secular_value(const pg_instance *inst, double mu, double energy,
                           double *out) {
  if (pg_status s = require(inst && out, "instance and out must not be NULL"))
    return s;
  return guarded([&] { *out = projgap::secular_value(inst->inst, mu, energy); });
}

pg_status pg_exact_eigenvalues(const pg_instance *inst, double mu, double *out) {
  if (pg_status s = require(inst && out, "instance and out must not be NULL"))
    return s;
  return guarded([&] {
    std::vector<double> vals = projgap::exact_eigenvalues(inst->inst, mu);
    std::memcpy(out, vals.data(), vals.size() * sizeof(double));
  });
}

pg_status pg_exact_ground(const pg_instance *inst, double mu,
                          pg_ground_state *out) {
  if (pg_status s = require(inst && out, "instance and out must not be NULL"))
    return s;
  return guarded(
      [&] { fill_ground(projgap::exact_ground(inst->inst, mu), out); });
}

pg_status pg_exact_gap(const pg_instance *inst, double mu, double *out) {
  if (pg_status s = require(inst && out, "instance and out must not be NULL"))
    return s;
  return guarded([&] { *out = projgap::exact_gap(inst->inst, mu); });
}

pg_status pg_min_gap_scan(const pg_instance *inst, int64_t grid_points,
                          double refine_tol, pg_gap_minimum *out) {
  if (pg_status s = require(inst && out, "instance and out must not be NULL"))
    return s;
  return guarded([&] {
    projgap::GapMinimum g =
        projgap::min_gap_scan(inst->inst, grid_points, refine_tol);
    out->mu = g.mu;
    out->gap = g.gap;
  });
}

pg_status pg_dense_eigensolver(const double *matrix, int64_t n, double *values,
                               double *vectors) {
  if (pg_status s = require(matrix && values && n > 0,
                            "matrix and values must not be NULL, n > 0"))
    return s;
  return guarded([&] {
    projgap::SymMatrix m;
    m.n = static_cast<std::size_t>(n);
    m.a.assign(matrix, matrix + n * n);
    projgap::EigenDecomposition e = projgap::dense_eigensolver(m);
    std::memcpy(values, e.values.data(), e.values.size() * sizeof(double));
    if (vectors)
      std::memcpy(vectors, e.vectors.data(), e.vectors.size() * sizeof(double));
  });
}

pg_status pg_build_hmu(const pg_instance *inst, double mu, double *out) {
  if (pg_status s = require(inst && out, "instance and out must not be NULL"))
    return s;
  return guarded([&] {
    projgap::SymMatrix m = projgap::build_hmu(inst->inst, mu);
    std::memcpy(out, m.a.data(), m.a.size() * sizeof(double));
  });
}

pg_status pg_profile_at(const pg_instance *inst, double mu,
                        pg_analytic_profile *out) {
  if (pg_status s = require(inst && out, "instance and out must not be NULL"))
    return s;
  return guarded([&] {
    projgap::AnalyticProfile p = projgap::profile_at(inst->inst, mu);
    out->mu = p.mu;
    out->detuning = p.detuning;
    out->coupling_scale = p.coupling_scale;
    out->eta = p.eta;
    out->e_minus = p.e_minus;
    out->e_plus = p.e_plus;
    out->gap = p.gap;
    out->epsilon = p.epsilon;
  });
}

pg_status pg_summarize(const pg_instance *inst, double c, pg_summary *out) {
  if (pg_status s = require(inst && out, "instance and out must not be NULL"))
    return s;
  return guarded([&] {
    projgap::InstanceSummary sm = projgap::summarize(inst->inst, c);
    out->c = sm.c;
    out->mu_star = sm.mu_star;
    out->omega = sm.omega;
    out->mu_min = sm.mu_min;
    out->g_min = sm.g_min;
    out->mu_minus = sm.mu_minus;
    out->mu_plus = sm.mu_plus;
    out->plateau_overlap = sm.plateau_overlap;
    out->p_success = sm.p_success;
    out->partial_time_bound = sm.partial_time_bound;
    out->h_distance_norm = sm.h_distance_norm;
    out->full_time_bound = sm.full_time_bound;
    out->margin_c_omega_ok = sm.margin_c_omega_ok ? 1 : 0;
    out->margin_c_alpha_ok = sm.margin_c_alpha_ok ? 1 : 0;
  });
}

pg_status pg_ground_overlaps_analytic(const pg_instance *inst, double mu,
                                      double c, pg_overlap_estimate *out) {
  if (pg_status s = require(inst && out, "instance and out must not be NULL"))
    return s;
  return guarded([&] {
    projgap::OverlapEstimate e =
        projgap::ground_overlaps_analytic(inst->inst, mu, c);
    out->overlap_s = e.overlap_s;
    out->overlap_t = e.overlap_t;
    out->outside_validity = e.outside_validity ? 1 : 0;
  });
}

pg_status pg_validity_check(const pg_instance *inst, double mu, double c,
                            double threshold, pg_validity *out) {
  if (pg_status s = require(inst && out, "instance and out must not be NULL"))
    return s;
  return guarded([&] {
    projgap::ValidityCheck v =
        projgap::validity_check(inst->inst, mu, c, threshold);
    out->lhs = v.lhs;
    out->rhs = v.rhs;
    out->ratio = v.ratio;
    out->margin = v.margin;
    out->window_bound = v.window_bound;
    out->pass = v.pass ? 1 : 0;
  });
}

pg_status pg_schedule_mu(const pg_instance *inst, const pg_schedule *s,
                         double tau, double *out) {
  if (pg_status st = require(inst && s && out,
                             "instance, schedule and out must not be NULL"))
    return st;
  return guarded(
      [&] { *out = projgap::schedule_mu(inst->inst, to_schedule(s), tau); });
}

pg_status pg_propagate(const pg_instance *inst, const pg_schedule *s,
                       const double *initial_re, const double *initial_im,
                       pg_evolution_result *out, double *trace_tau,
                       double *trace_mu, double *trace_ground_fidelity,
                       double *trace_overlap_t, double *trace_norm_defect) {
  if (pg_status st = require(inst && s && out,
                             "instance, schedule and out must not be NULL"))
    return st;
  if (pg_status st = require((initial_re == nullptr) == (initial_im == nullptr),
                             "initial_re and initial_im must both be given"))
    return st;
  return guarded([&] {
    std::vector<projgap::Complex> initial;
    if (initial_re) {
      initial.resize(inst->inst.size());
      for (std::size_t i = 0; i < initial.size(); ++i)
        initial[i] = projgap::Complex(initial_re[i], initial_im[i]);
    }
    bool want_trace = trace_tau || trace_mu || trace_ground_fidelity ||
                      trace_overlap_t || trace_norm_defect;
    projgap::Trajectory traj;
    projgap::EvolutionResult r =
        projgap::propagate(inst->inst, to_schedule(s), initial,
                           want_trace ? &traj : nullptr);
    out->final_overlap_t = r.final_overlap_t;
    out->final_overlap_ground = r.final_overlap_ground;
    out->min_inst_fidelity = r.min_inst_fidelity;
    out->unitarity_defect = r.unitarity_defect;
    if (want_trace) {
      std::size_t rows = traj.tau.size();
      auto copy = [&](double *dst, const std::vector<double> &src) {
        if (dst)
          std::memcpy(dst, src.data(), rows * sizeof(double));
      };
      copy(trace_tau, traj.tau);
      copy(trace_mu, traj.mu);
      copy(trace_ground_fidelity, traj.ground_fidelity);
      copy(trace_overlap_t, traj.overlap_t);
      copy(trace_norm_defect, traj.norm_defect);
    }
  });
}

pg_status pg_run_partial_algorithm(const pg_instance *inst, double c,
                                   double gamma, int64_t steps, int64_t trials,
                                   uint64_t seed, pg_trial_stats *out) {
  if (pg_status s = require(inst && out, "instance and out must not be NULL"))
    return s;
  return guarded([&] {
    projgap::TrialStats t =
        projgap::run_partial_algorithm(inst->inst, c, gamma, steps, trials, seed);
    out->trials = t.trials;
    out->successes = t.successes;
    out->estimated_p = t.estimated_p;
    out->std_error = t.std_error;
    out->deterministic_p = t.deterministic_p;
  });
}

pg_status pg_required_time(const pg_instance *inst, const pg_schedule *base,
                           double target_p, double rel_tol, double gamma_cap,
                           pg_required_time_result *out) {
  if (pg_status s = require(inst && base && out,
                            "instance, schedule and out must not be NULL"))
    return s;
  auto fill = [&](const projgap::RequiredTime &rt) {
    out->gamma = rt.gamma;
    out->achieved_p = rt.achieved_p;
    out->evaluations = rt.evaluations;
    out->nonmonotone = rt.nonmonotone ? 1 : 0;
    out->capped = rt.capped ? 1 : 0;
  };
  try {
    fill(projgap::required_time(inst->inst, to_schedule(base), target_p,
                                rel_tol, gamma_cap));
    g_last_error.clear();
    return PG_OK;
  } catch (const projgap::CapExceeded &e) {
    fill(e.best());
    g_last_error = e.what();
    return PG_ERR_CAP_EXCEEDED;
  } catch (const projgap::Error &e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception &e) {
    g_last_error = e.what();
    return PG_ERR_INTERNAL;
  }
}

pg_status pg_plateau_success(const pg_instance *inst, double c, double *out) {
  if (pg_status s = require(inst && out, "instance and out must not be NULL"))
    return s;
  return guarded([&] { *out = projgap::plateau_success(inst->inst, c); });
}

pg_status pg_run_scaling(const int64_t *n_values, int64_t n_count,
                         const pg_schedule *base, double target_p,
                         double rel_tol, double gamma_cap, pg_scaling_fit *fit,
                         pg_scaling_point *points) {
  if (pg_status s = require(n_values && base && fit && points,
                            "n_values, base, fit and points must not be NULL"))
    return s;
  pg_status code = PG_OK;
  pg_status run = guarded([&] {
    projgap::ScalingConfig cfg;
    cfg.n_values.assign(n_values, n_values + n_count);
    cfg.base = to_schedule(base);
    cfg.target_p = target_p;
    cfg.rel_tol = rel_tol > 0 ? rel_tol : 0.05;
    cfg.gamma_cap = gamma_cap > 0 ? gamma_cap : 1e7;
    projgap::ScalingFit f = projgap::run_scaling(cfg);
    fit->exponent = f.exponent;
    fit->intercept = f.intercept;
    fit->r_squared = f.r_squared;
    fit->capped = f.capped ? 1 : 0;
    fit->n_points = static_cast<int64_t>(f.points.size());
    for (std::size_t i = 0; i < f.points.size(); ++i) {
      points[i].n = f.points[i].n;
      points[i].alpha = f.points[i].alpha;
      points[i].gamma_required = f.points[i].gamma_required;
      points[i].achieved_p = f.points[i].achieved_p;
      points[i].target_p = f.points[i].target_p;
    }
    if (f.capped) {
      g_last_error = "one or more sizes hit the gamma cap";
      code = PG_ERR_CAP_EXCEEDED;
    }
  });
  return run != PG_OK ? run : code;
}

pg_status pg_validate(const pg_instance *inst,
                      const pg_validation_options *options,
                      pg_validation_report *out) {
  if (pg_status s = require(inst && out, "instance and out must not be NULL"))
    return s;
  return guarded([&] {
    projgap::ValidationOptions opt;
    if (options) {
      if (options->dense_max_n > 0)
        opt.dense_max_n = options->dense_max_n;
      if (options->mu_samples > 0)
        opt.mu_samples = options->mu_samples;
      opt.sweep = options->sweep;
      if (options->oracle_tol > 0)
        opt.oracle_tol = options->oracle_tol;
      if (options->overlap_tol > 0)
        opt.overlap_tol = options->overlap_tol;
      if (options->c > 0)
        opt.c = options->c;
    }
    projgap::ValidationReport r = projgap::run_validation(inst->inst, opt);
    out->all_ok = r.all_ok ? 1 : 0;
    out->max_eigenvalue_err = r.max_eigenvalue_err;
    out->max_overlap_err = r.max_overlap_err;
    out->eigenvalues_ok = r.eigenvalues_ok ? 1 : 0;
    out->overlaps_ok = r.overlaps_ok ? 1 : 0;
    out->interlacing_ok = r.interlacing_ok ? 1 : 0;
    out->one_negative_ok = r.one_negative_ok ? 1 : 0;
    out->cauchy_schwarz_ok = r.cauchy_schwarz_ok ? 1 : 0;
    out->sweep_violations = r.sweep_violations;
    out->table_rows = r.analytic_table_available
                          ? static_cast<int64_t>(r.analytic_table.size())
                          : 0;
    fill_assumptions(r.assumptions, &out->assumptions);
  });
}

pg_status pg_analytic_error_table(const pg_instance *inst, double c,
                                  int64_t n_rows, double *mu,
                                  double *energy_err, double *overlap_s_err,
                                  double *overlap_t_err, int *validity_pass) {
  if (pg_status s = require(inst && n_rows >= 2, "need an instance and >= 2 rows"))
    return s;
  return guarded([&] {
    projgap::CrossoverWindow w = projgap::crossover_window(inst->inst, c);
    for (int64_t i = 0; i < n_rows; ++i) {
      double m = w.mu_minus + (w.mu_plus - w.mu_minus) *
                                  static_cast<double>(i) /
                                  static_cast<double>(n_rows - 1);
      projgap::AnalyticProfile p = projgap::profile_at(inst->inst, m);
      projgap::OverlapEstimate est =
          projgap::ground_overlaps_analytic(inst->inst, m, c);
      projgap::GroundState g = projgap::exact_ground(inst->inst, m);
      if (mu)
        mu[i] = m;
      if (energy_err)
        energy_err[i] = std::abs(p.e_minus - g.energy);
      if (overlap_s_err)
        overlap_s_err[i] = std::abs(est.overlap_s - g.overlap_s);
      if (overlap_t_err)
        overlap_t_err[i] = std::abs(est.overlap_t - g.overlap_t);
      if (validity_pass)
        validity_pass[i] = projgap::validity_check(inst->inst, m, c).pass ? 1 : 0;
    }
  });
}

} // extern "C"
