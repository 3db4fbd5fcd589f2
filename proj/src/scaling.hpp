#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dynamics.hpp"
#include "instance.hpp"

namespace projgap {

struct LineFit {
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
};

// Least-squares line through (x, y); r^2 = 1 when the x values are constant.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

struct ScalingPoint {
  std::int64_t n = 0;
  double alpha = 0;
  double gamma_required = 0;
  double achieved_p = 0;
  double target_p = 0;
  bool capped = false;
};

struct ScalingFit {
  double exponent = 0; // slope of log(gamma_required) vs log(alpha)
  double intercept = 0;
  double r_squared = 0;
  bool capped = false;
  std::vector<ScalingPoint> points;
};

struct ScalingConfig {
  std::vector<std::int64_t> n_values; // >= 3 entries
  Schedule base;                      // kind/steps/c; gamma ignored
  double target_p = 0.9; // absolute, or a plateau fraction for partial sweeps
  double rel_tol = 0.05;
  double gamma_cap = 1e7;
};

// Search-instance scaling experiment: required_time per size, log-log fit of
// gamma against alpha = 1/sqrt(n).  Capped sizes are kept in points (flagged)
// and excluded from the fit.
ScalingFit run_scaling(const ScalingConfig &config);

} // namespace projgap
