#include "analytic.hpp"

#include <cmath>
#include <sstream>

#include "errors.hpp"
#include "spectral.hpp"

namespace projgap {

namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

struct Moments {
  double alpha = 0;
  double u1 = 0;
  double u2 = 0;
};

Moments moments_checked(const Instance &inst) {
  Moments m;
  m.alpha = inst.alpha();
  if (m.alpha <= 0.0)
    fail(ErrorCode::degenerate,
         "start and target ground states are orthogonal (alpha = 0); the "
         "two-level reduction is undefined");
  m.u1 = overlap_moment(inst, 1);
  m.u2 = overlap_moment(inst, 2);
  if (m.u1 <= 0.0 || m.u2 <= 0.0)
    fail(ErrorCode::degenerate,
         "target carries no excited-level weight; the crossover is undefined");
  return m;
}

double cot_two_eta(const Moments &m, double mu) {
  return (m.u1 - (1.0 - mu) / mu) / (2.0 * m.alpha * std::sqrt(m.u2));
}

} // namespace

AnalyticProfile profile_at(const Instance &inst, double mu) {
  if (!(mu > 0.0 && mu < 1.0))
    fail(ErrorCode::domain,
         "profile needs mu strictly inside (0,1), got " + num(mu));
  Moments m = moments_checked(inst);

  AnalyticProfile p;
  p.mu = mu;
  p.detuning = m.u1 / (1.0 - mu) - 1.0 / mu;
  p.coupling_scale = std::sqrt(m.u2) / (1.0 - mu);
  double cot2 = cot_two_eta(m, mu);
  // eta in (0, pi/2): cot(2 eta) -> +inf gives eta -> 0, -inf gives pi/2.
  p.eta = 0.5 * std::atan2(1.0, cot2);
  double scale = m.alpha / p.coupling_scale;
  double tan_eta = std::tan(p.eta);
  p.e_minus = -scale / tan_eta;
  p.e_plus = scale * tan_eta;
  double sin2 = 1.0 / std::sqrt(1.0 + cot2 * cot2); // sin(2 eta), stable
  p.gap = 2.0 * scale / sin2;
  double mu_star = 1.0 / (1.0 + m.u1);
  p.epsilon = 1.0 - mu_star / mu;
  return p;
}

CrossoverGeometry crossover_geometry(const Instance &inst) {
  Moments m = moments_checked(inst);
  double sq2 = std::sqrt(m.u2);
  CrossoverGeometry g;
  g.mu_star = 1.0 / (1.0 + m.u1);
  g.omega = (1.0 + m.u1) * (1.0 + m.u1) / (2.0 * m.alpha * sq2);
  double one_minus = 1.0 - g.mu_star;
  g.g_min = 2.0 * m.alpha * one_minus / sq2 *
            (1.0 - 1.0 / (2.0 * g.omega * g.omega * one_minus * one_minus));
  return g;
}

CrossoverWindow crossover_window(const Instance &inst, double c) {
  Moments m = moments_checked(inst);
  CrossoverGeometry geom = crossover_geometry(inst);
  CrossoverWindow w;
  w.mu_star = geom.mu_star;
  w.omega = geom.omega;
  if (!(c > 1.0))
    fail(ErrorCode::invalid_argument,
         "window parameter c must exceed 1, got " + num(c));
  if (!(c < w.omega))
    fail(ErrorCode::invalid_argument, "window parameter c = " + num(c) +
                                          " must stay below omega = " +
                                          num(w.omega));
  double xi1_over_alpha = inst.xi[1] / m.alpha;
  if (!(c < xi1_over_alpha))
    fail(ErrorCode::invalid_argument, "window parameter c = " + num(c) +
                                          " must stay below xi1/alpha = " +
                                          num(xi1_over_alpha));
  w.mu_minus = w.mu_star - c / w.omega;
  w.mu_plus = w.mu_star + c / w.omega;
  if (!(w.mu_minus > 0.0))
    fail(ErrorCode::invalid_argument,
         "window lower edge " + num(w.mu_minus) + " is not above 0; reduce c");
  if (!(w.mu_plus < 1.0))
    fail(ErrorCode::invalid_argument,
         "window upper edge " + num(w.mu_plus) + " is not below 1; reduce c");
  w.g_min = geom.g_min;
  return w;
}

InstanceSummary summarize(const Instance &inst, double c) {
  Moments m = moments_checked(inst);
  CrossoverWindow w = crossover_window(inst, c);

  InstanceSummary s;
  s.c = c;
  s.mu_star = w.mu_star;
  s.omega = w.omega;
  s.mu_minus = w.mu_minus;
  s.mu_plus = w.mu_plus;
  s.g_min = w.g_min;
  double one_minus = 1.0 - w.mu_star;
  s.mu_min = w.mu_star + 1.0 / (w.omega * w.omega * one_minus);
  if (!(s.mu_minus < s.mu_star && s.mu_star < s.mu_min && s.mu_min < s.mu_plus))
    fail(ErrorCode::invalid_argument,
         "window ordering mu- < mu* < mu_min < mu+ failed for c = " + num(c));
  s.plateau_overlap = m.u1 / std::sqrt(m.u2);
  double sin_eta_minus = std::sin(profile_at(inst, s.mu_minus).eta);
  s.p_success = sin_eta_minus * sin_eta_minus * m.u1 * m.u1 / m.u2;
  s.partial_time_bound = (c / m.alpha) *
                         (std::pow(m.u2, 2.5) / std::pow(m.u1, 4.0)) *
                         (1.0 + 1.0 / (4.0 * c * c));
  s.h_distance_norm = hs_minus_ht_norm(inst);
  s.full_time_bound = s.h_distance_norm / (s.g_min * s.g_min);
  s.margin_c_omega_ok = c <= w.omega / 4.0;
  s.margin_c_alpha_ok = c <= inst.xi[1] / (4.0 * m.alpha);
  return s;
}

OverlapEstimate ground_overlaps_analytic(const Instance &inst, double mu,
                                         double c) {
  AnalyticProfile p = profile_at(inst, mu);
  Moments m = moments_checked(inst);
  OverlapEstimate e;
  e.overlap_s = std::sin(p.eta);
  e.overlap_t = (1.0 / mu - 1.0) * std::cos(p.eta) / std::sqrt(m.u2);
  double mu_star = 1.0 / (1.0 + m.u1);
  double omega = (1.0 + m.u1) * (1.0 + m.u1) / (2.0 * m.alpha * std::sqrt(m.u2));
  e.outside_validity = std::abs(mu - mu_star) > 4.0 * c / omega;
  return e;
}

ValidityCheck validity_check(const Instance &inst, double mu, double c,
                             double threshold) {
  Moments m = moments_checked(inst);
  double cot2 = cot_two_eta(m, mu);
  double csc2 = std::sqrt(1.0 + cot2 * cot2);
  ValidityCheck v;
  v.lhs = m.alpha * csc2;
  v.rhs = inst.xi[1] * std::sqrt(m.u2) / 2.0;
  v.ratio = v.lhs / v.rhs;
  v.pass = v.ratio <= threshold;
  v.margin = threshold - v.ratio;
  v.window_bound = m.alpha * std::sqrt(1.0 + c * c);
  return v;
}

} // namespace projgap
