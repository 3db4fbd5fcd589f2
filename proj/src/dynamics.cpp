#include "dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <sstream>

#include "analytic.hpp"
#include "spectral.hpp"

namespace projgap {

namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

double uniform01(std::mt19937_64 &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Gap model used to pace the local schedule: g_min csc(2 eta), the combined
// near-crossover form.  Unlike the windowed gap formula it stays bounded away
// from zero at both endpoints, so 1/g^2 is integrable over [0,1].
struct PaceModel {
  double alpha, u1, u2, g_min;

  explicit PaceModel(const Instance &inst) {
    alpha = inst.alpha();
    u1 = overlap_moment(inst, 1);
    u2 = overlap_moment(inst, 2);
    g_min = crossover_geometry(inst).g_min;
  }

  double gap(double mu) const {
    double cot2 = (u1 - (1.0 - mu) / mu) / (2.0 * alpha * std::sqrt(u2));
    return g_min * std::sqrt(1.0 + cot2 * cot2);
  }
};

// Cumulative table of integral(0..mu) dm / g(m)^2 built by adaptive Simpson,
// invertible for mu(tau).
class LocalPacer {
public:
  LocalPacer(const Instance &inst, bool exact)
      : inst_(inst), model_(inst), exact_(exact) {
    build();
  }

  double mu_at_fraction(double frac) const {
    if (frac <= 0.0)
      return 0.0;
    if (frac >= 1.0)
      return 1.0;
    double target = frac * total_;
    std::size_t hi = std::upper_bound(cum_.begin(), cum_.end(), target) -
                     cum_.begin();
    if (hi == 0)
      return node_.front();
    if (hi >= cum_.size())
      return 1.0;
    double a = node_[hi - 1], b = node_[hi];
    double want = target - cum_[hi - 1];
    double lo = a, up = b;
    for (int it = 0; it < 50 && up - lo > 1e-14; ++it) {
      double mid = 0.5 * (lo + up);
      if (segment(a, mid) < want)
        lo = mid;
      else
        up = mid;
    }
    return 0.5 * (lo + up);
  }

  double total() const { return total_; }

private:
  double integrand(double mu) const {
    double g = exact_ ? exact_gap(inst_, mu) : model_.gap(mu);
    return 1.0 / (g * g);
  }

  double segment(double a, double b) const {
    // 5-point composite Simpson; panels are already resolved to tolerance.
    double h = (b - a) / 4.0;
    double f0 = integrand(a), f1 = integrand(a + h), f2 = integrand(a + 2 * h),
           f3 = integrand(a + 3 * h), f4 = integrand(b);
    return h / 3.0 * (f0 + 4 * f1 + 2 * f2 + 4 * f3 + f4);
  }

  void build() {
    // Coarse estimate sets the absolute tolerance for the adaptive pass.
    double coarse = 0.0;
    const int n0 = 512;
    for (int i = 0; i < n0; ++i)
      coarse += segment(i / double(n0), (i + 1) / double(n0));
    double tol = 1e-10 * std::max(coarse, 1e-300);

    struct Frame {
      double a, b, fa, fm, fb, s;
      int depth;
    };
    auto simpson = [](double a, double b, double fa, double fm, double fb) {
      return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    };
    node_.push_back(0.0);
    cum_.push_back(0.0);
    std::vector<Frame> stack;
    {
      double fa = integrand(0.0), fb = integrand(1.0), fm = integrand(0.5);
      stack.push_back({0.0, 1.0, fa, fm, fb, simpson(0.0, 1.0, fa, fm, fb), 0});
    }
    double acc = 0.0;
    while (!stack.empty()) {
      Frame f = stack.back();
      stack.pop_back();
      double m = 0.5 * (f.a + f.b);
      double fl = integrand(0.5 * (f.a + m));
      double fr = integrand(0.5 * (m + f.b));
      double sl = simpson(f.a, m, f.fa, fl, f.fm);
      double sr = simpson(m, f.b, f.fm, fr, f.fb);
      double err = sl + sr - f.s;
      double local_tol = tol * (f.b - f.a);
      if (std::abs(err) <= 15.0 * local_tol || f.depth >= 40 ||
          f.b - f.a < 1e-12) {
        acc += sl + sr + err / 15.0;
        node_.push_back(f.b);
        cum_.push_back(acc);
      } else {
        // Right pushed first so the left half is emitted first (in order).
        stack.push_back({m, f.b, f.fm, fr, f.fb, sr, f.depth + 1});
        stack.push_back({f.a, m, f.fa, fl, f.fm, sl, f.depth + 1});
      }
    }
    total_ = acc;
  }

  const Instance &inst_;
  PaceModel model_;
  bool exact_;
  std::vector<double> node_, cum_;
  double total_ = 0;
};

struct MuPath {
  std::function<double(double)> mu_of;
  double gamma;
};

MuPath make_path(const Instance &inst, const Schedule &s) {
  if (s.gamma < 0.0)
    fail(ErrorCode::invalid_argument,
         "schedule duration must be >= 0, got " + num(s.gamma));
  double gamma = s.gamma;
  switch (s.kind) {
  case ScheduleKind::full_linear:
    return {[gamma](double tau) { return gamma > 0.0 ? tau / gamma : 0.0; },
            gamma};
  case ScheduleKind::partial: {
    CrossoverWindow w = crossover_window(inst, s.c);
    double lo = w.mu_minus, width = w.mu_plus - w.mu_minus;
    return {[lo, width, gamma](double tau) {
              return gamma > 0.0 ? lo + width * tau / gamma : lo;
            },
            gamma};
  }
  case ScheduleKind::local_adaptive: {
    auto pacer = std::make_shared<LocalPacer>(inst, s.local_exact_gap);
    return {[pacer, gamma](double tau) {
              return pacer->mu_at_fraction(gamma > 0.0 ? tau / gamma : 0.0);
            },
            gamma};
  }
  }
  fail(ErrorCode::invalid_argument, "unknown schedule kind");
}

// One exact midpoint-unitary step exp(-i H(mu) dtau) through the rank-one
// block structure: decoupled levels pick up bare phases, each equal-xi group
// splits into its coupled direction plus a phase-only remainder, and the
// coupled directions rotate through the reduced secular eigensystem.
class StepEngine {
public:
  explicit StepEngine(const Instance &inst)
      : inst_(inst), s_(analyze(inst)), k_(s_.pole_xi.size()),
        tol_(1e-13 * std::max(1.0, inst.xi.back())) {
    w_.resize(k_);
    for (std::size_t j = 0; j < k_; ++j)
      w_[j] = std::sqrt(s_.pole_w2[j]);
    d_.resize(k_);
    vec_.resize(k_ * k_);
    x_.resize(k_);
    xn_.resize(k_);
    y_.resize(k_);
  }

  const RankOneStructure &structure() const { return s_; }

  void apply(std::vector<Complex> &psi, double mu, double dtau) {
    if (mu <= 0.0) {
      for (std::size_t l = 0; l < psi.size(); ++l)
        psi[l] *= std::polar(1.0, -inst_.xi[l] * dtau);
      return;
    }
    if (mu >= 1.0) {
      Complex z = 0.0;
      for (std::size_t l = 0; l < psi.size(); ++l)
        z += inst_.t_overlap[l] * psi[l];
      Complex shift = (std::polar(1.0, dtau) - 1.0) * z;
      for (std::size_t l = 0; l < psi.size(); ++l)
        psi[l] += shift * inst_.t_overlap[l];
      return;
    }

    double scale = 1.0 - mu;
    for (std::size_t idx : s_.silent)
      psi[idx] *= std::polar(1.0, -inst_.xi[idx] * scale * dtau);

    for (std::size_t j = 0; j < k_; ++j) {
      d_[j] = s_.pole_xi[j] * scale;
      Complex acc = 0.0;
      for (std::size_t l : s_.members[j])
        acc += (inst_.t_overlap[l] / w_[j]) * psi[l];
      x_[j] = acc;
    }

    std::vector<double> lambda = secular_roots(d_, s_.pole_w2, mu, tol_);
    for (std::size_t r = 0; r < k_; ++r) {
      double norm2 = 0.0;
      for (std::size_t j = 0; j < k_; ++j) {
        double v = w_[j] / (d_[j] - lambda[r]);
        vec_[j * k_ + r] = v;
        norm2 += v * v;
      }
      double inv = 1.0 / std::sqrt(norm2);
      for (std::size_t j = 0; j < k_; ++j)
        vec_[j * k_ + r] *= inv;
    }

    for (std::size_t r = 0; r < k_; ++r) {
      Complex acc = 0.0;
      for (std::size_t j = 0; j < k_; ++j)
        acc += vec_[j * k_ + r] * x_[j];
      y_[r] = acc * std::polar(1.0, -lambda[r] * dtau);
    }
    for (std::size_t j = 0; j < k_; ++j) {
      Complex acc = 0.0;
      for (std::size_t r = 0; r < k_; ++r)
        acc += vec_[j * k_ + r] * y_[r];
      xn_[j] = acc;
    }

    for (std::size_t j = 0; j < k_; ++j) {
      Complex phase = std::polar(1.0, -d_[j] * dtau);
      for (std::size_t l : s_.members[j]) {
        double wl = inst_.t_overlap[l] / w_[j];
        psi[l] = phase * (psi[l] - x_[j] * wl) + xn_[j] * wl;
      }
    }
  }

private:
  const Instance &inst_;
  RankOneStructure s_;
  std::size_t k_;
  double tol_;
  std::vector<double> w_, d_, vec_;
  std::vector<Complex> x_, xn_, y_;
};

double overlap_with_target(const Instance &inst,
                           const std::vector<Complex> &psi) {
  Complex z = 0.0;
  for (std::size_t l = 0; l < psi.size(); ++l)
    z += inst.t_overlap[l] * psi[l];
  return std::abs(z);
}

double state_norm(const std::vector<Complex> &psi) {
  double n2 = 0.0;
  for (const Complex &z : psi)
    n2 += std::norm(z);
  return std::sqrt(n2);
}

} // namespace

double schedule_mu(const Instance &inst, const Schedule &s, double tau) {
  MuPath path = make_path(inst, s);
  if (tau < 0.0 || tau > path.gamma)
    fail(ErrorCode::invalid_argument, "tau = " + num(tau) +
                                          " outside [0, " + num(path.gamma) +
                                          "]");
  return path.mu_of(tau);
}

EvolutionResult propagate_path(const Instance &inst,
                               const std::function<double(double)> &mu_of_tau,
                               double gamma, std::int64_t steps,
                               std::span<const Complex> initial,
                               Trajectory *traj) {
  if (steps < 100)
    fail(ErrorCode::invalid_argument,
         "propagation needs at least 100 steps, got " + std::to_string(steps));
  if (gamma < 0.0)
    fail(ErrorCode::invalid_argument, "gamma must be >= 0, got " + num(gamma));

  std::size_t n = inst.size();
  std::vector<Complex> psi(n, 0.0);
  if (initial.empty()) {
    psi[0] = 1.0;
  } else {
    if (initial.size() != n)
      fail(ErrorCode::invalid_argument,
           "initial state has dimension " + std::to_string(initial.size()) +
               ", instance has " + std::to_string(n));
    double n2 = 0.0;
    for (const Complex &z : initial)
      n2 += std::norm(z);
    if (std::abs(std::sqrt(n2) - 1.0) > 1e-12)
      fail(ErrorCode::invalid_argument,
           "initial state is not normalized: ||psi|| = " + num(std::sqrt(n2)));
    std::copy(initial.begin(), initial.end(), psi.begin());
  }

  StepEngine engine(inst);
  std::vector<double> gvec;

  EvolutionResult res;
  res.min_inst_fidelity = 1.0;
  res.unitarity_defect = 0.0;

  auto record = [&](double tau) {
    double mu = mu_of_tau(tau);
    ground_vector(inst, engine.structure(), mu, gvec);
    Complex g = 0.0;
    for (std::size_t l = 0; l < n; ++l)
      g += gvec[l] * std::conj(psi[l]);
    double fid = std::abs(g);
    double ovt = overlap_with_target(inst, psi);
    double defect = std::abs(state_norm(psi) - 1.0);
    res.min_inst_fidelity = std::min(res.min_inst_fidelity, fid);
    res.unitarity_defect = std::max(res.unitarity_defect, defect);
    res.final_overlap_ground = fid;
    res.final_overlap_t = ovt;
    if (traj) {
      traj->tau.push_back(tau);
      traj->mu.push_back(mu);
      traj->ground_fidelity.push_back(fid);
      traj->overlap_t.push_back(ovt);
      traj->norm_defect.push_back(defect);
    }
  };

  if (traj) {
    traj->tau.clear();
    traj->mu.clear();
    traj->ground_fidelity.clear();
    traj->overlap_t.clear();
    traj->norm_defect.clear();
  }

  if (gamma == 0.0) {
    record(0.0);
    return res;
  }

  double dtau = gamma / static_cast<double>(steps);
  record(0.0);
  for (std::int64_t i = 0; i < steps; ++i) {
    double mid = (static_cast<double>(i) + 0.5) * dtau;
    engine.apply(psi, mu_of_tau(mid), dtau);
    record(static_cast<double>(i + 1) * dtau);
  }
  return res;
}

EvolutionResult propagate(const Instance &inst, const Schedule &s,
                          std::span<const Complex> initial, Trajectory *traj) {
  MuPath path = make_path(inst, s);
  return propagate_path(inst, path.mu_of, path.gamma, s.steps, initial, traj);
}

TrialStats run_partial_algorithm(const Instance &inst, double c, double gamma,
                                 std::int64_t steps, std::int64_t trials,
                                 std::uint64_t seed) {
  if (trials < 1)
    fail(ErrorCode::invalid_argument,
         "need at least 1 trial, got " + std::to_string(trials));
  Schedule s;
  s.kind = ScheduleKind::partial;
  s.gamma = gamma;
  s.steps = steps;
  s.c = c;
  EvolutionResult ev = propagate(inst, s);
  double p = ev.final_overlap_t * ev.final_overlap_t;

  TrialStats stats;
  stats.trials = trials;
  stats.deterministic_p = p;
  for (std::int64_t i = 0; i < trials; ++i) {
    // Independent per-trial stream so trials can run in any order.
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(i));
    if (uniform01(rng) < p)
      ++stats.successes;
  }
  stats.estimated_p =
      static_cast<double>(stats.successes) / static_cast<double>(trials);
  stats.std_error = std::sqrt(stats.estimated_p * (1.0 - stats.estimated_p) /
                              static_cast<double>(trials));
  return stats;
}

RequiredTime required_time(const Instance &inst, const Schedule &base,
                           double target_p, double rel_tol, double gamma_cap) {
  if (!(target_p >= 0.0 && target_p < 1.0))
    fail(ErrorCode::invalid_argument,
         "target probability must lie in [0,1), got " + num(target_p));
  if (rel_tol <= 0.0)
    rel_tol = 0.05;
  if (gamma_cap <= 0.0)
    gamma_cap = 1e7;

  RequiredTime out;
  auto eval = [&](double gamma) {
    Schedule s = base;
    s.gamma = gamma;
    EvolutionResult ev = propagate(inst, s);
    ++out.evaluations;
    return ev.final_overlap_t * ev.final_overlap_t;
  };

  double p0 = eval(0.0);
  if (p0 >= target_p) {
    out.gamma = 0.0;
    out.achieved_p = p0;
    return out;
  }

  CrossoverGeometry geom = crossover_geometry(inst);
  double g2 = geom.g_min * geom.g_min;
  double scale = base.kind == ScheduleKind::partial
                     ? 2.0 * base.c / (geom.omega * g2)
                     : 1.0 / g2;

  double gamma = scale / 64.0;
  double best_p = p0, best_gamma = 0.0, max_p = p0;
  double p = eval(gamma);
  for (;;) {
    if (p > best_p) {
      best_p = p;
      best_gamma = gamma;
    }
    if (p < max_p - 0.02)
      out.nonmonotone = true;
    max_p = std::max(max_p, p);
    if (p >= target_p)
      break;
    gamma *= 2.0;
    if (gamma > gamma_cap) {
      RequiredTime best = out;
      best.gamma = best_gamma;
      best.achieved_p = best_p;
      best.capped = true;
      throw CapExceeded("target probability " + num(target_p) +
                            " not reached below gamma cap " + num(gamma_cap) +
                            "; best " + num(best_p) + " at gamma " +
                            num(best_gamma),
                        best);
    }
    p = eval(gamma);
  }

  // First crossing: bisect [gamma/2, gamma] to relative width rel_tol.
  double lo = gamma / 2.0, hi = gamma, p_hi = p;
  while (hi - lo > rel_tol * hi) {
    double mid = 0.5 * (lo + hi);
    double pm = eval(mid);
    if (pm >= target_p) {
      hi = mid;
      p_hi = pm;
    } else {
      lo = mid;
    }
  }
  out.gamma = hi;
  out.achieved_p = p_hi;
  return out;
}

double plateau_success(const Instance &inst, double c) {
  CrossoverWindow w = crossover_window(inst, c);
  GroundState lo = exact_ground(inst, w.mu_minus);
  GroundState hi = exact_ground(inst, w.mu_plus);
  return lo.overlap_s * lo.overlap_s * hi.overlap_t * hi.overlap_t;
}

} // namespace projgap
