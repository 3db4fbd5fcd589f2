#pragma once

#include <cstdint>
#include <vector>

#include "instance.hpp"

namespace projgap {

struct ValidationOptions {
  std::int64_t dense_max_n = 16; // dense-oracle size cap; larger instances truncated
  std::int64_t mu_samples = 9;   // mu grid for the cross-checks
  std::int64_t sweep = 0;        // extra random instances for the moment-inequality sweep
  double oracle_tol = 1e-10;     // eigenvalue agreement vs the dense oracle
  double overlap_tol = 1e-8;     // ground-overlap agreement vs the dense oracle
  double c = 4.0;                // window parameter for the analytic error table
};

struct ValidationReport {
  bool all_ok = false; // every oracle/property check below passed
  double max_eigenvalue_err = 0;
  double max_overlap_err = 0;
  bool eigenvalues_ok = false;
  bool overlaps_ok = false;
  bool interlacing_ok = false;
  bool one_negative_ok = false;
  bool cauchy_schwarz_ok = false;
  std::int64_t sweep_violations = 0;
  std::int64_t oracle_n = 0; // dimension the dense cross-check actually used
  AssumptionReport assumptions;

  struct ErrorRow {
    double mu = 0;
    double energy_err = 0;    // |analytic ground energy - exact|
    double overlap_s_err = 0;
    double overlap_t_err = 0;
    bool validity_pass = false;
  };
  std::vector<ErrorRow> analytic_table; // reported, not asserted
  bool analytic_table_available = false;
};

// Cross-check battery: secular solver vs the dense Jacobi oracle (on the
// instance itself, truncating to dense_max_n levels when larger), root
// interlacing, negative-eigenvalue count, moment inequality (optionally over
// a random sweep), assumption report, and the analytic-vs-exact error table
// over the sweep window.
ValidationReport run_validation(const Instance &inst,
                                const ValidationOptions &options = {});

} // namespace projgap
