#include "scaling.hpp"

#include <cmath>

#include "errors.hpp"

namespace projgap {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    fail(ErrorCode::invalid_argument, "line fit needs >= 2 matched points");
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double denom = n * sxx - sx * sx;
  if (denom == 0.0)
    fail(ErrorCode::invalid_argument, "line fit is degenerate (constant x)");
  LineFit f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  double ss_res = 0, ss_tot = 0, mean_y = sy / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double r = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += r * r;
    double d = y[i] - mean_y;
    ss_tot += d * d;
  }
  f.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return f;
}

ScalingFit run_scaling(const ScalingConfig &config) {
  if (config.n_values.size() < 3)
    fail(ErrorCode::invalid_argument,
         "scaling experiment needs >= 3 sizes, got " +
             std::to_string(config.n_values.size()));

  ScalingFit fit;
  for (std::int64_t n : config.n_values) {
    Instance inst = make_grover(n);
    ScalingPoint pt;
    pt.n = n;
    pt.alpha = inst.alpha();
    pt.target_p = config.target_p;
    if (config.base.kind == ScheduleKind::partial)
      pt.target_p = config.target_p * plateau_success(inst, config.base.c);
    try {
      RequiredTime rt = required_time(inst, config.base, pt.target_p,
                                      config.rel_tol, config.gamma_cap);
      pt.gamma_required = rt.gamma;
      pt.achieved_p = rt.achieved_p;
    } catch (const CapExceeded &e) {
      pt.gamma_required = e.best().gamma;
      pt.achieved_p = e.best().achieved_p;
      pt.capped = true;
      fit.capped = true;
    }
    fit.points.push_back(pt);
  }

  std::vector<double> lx, ly;
  for (const ScalingPoint &pt : fit.points) {
    if (pt.capped || pt.gamma_required <= 0.0)
      continue;
    lx.push_back(std::log(pt.alpha));
    ly.push_back(std::log(pt.gamma_required));
  }
  if (lx.size() >= 2) {
    LineFit line = fit_line(lx, ly);
    fit.exponent = line.slope;
    fit.intercept = line.intercept;
    fit.r_squared = line.r_squared;
  }
  return fit;
}

} // namespace projgap
