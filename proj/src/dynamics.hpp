#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "errors.hpp"
#include "instance.hpp"

namespace projgap {

enum class ScheduleKind { full_linear, partial, local_adaptive };

struct Schedule {
  ScheduleKind kind = ScheduleKind::full_linear;
  double gamma = 0.0;  // total evolution time (hbar = 1); 0 = no evolution
  std::int64_t steps = 2000;
  double c = 4.0;      // partial window parameter
  bool local_exact_gap = false; // pace the local schedule by the exact gap
};

// Interpolation value mu(tau) for tau in [0, gamma].
double schedule_mu(const Instance &inst, const Schedule &s, double tau);

struct EvolutionResult {
  double final_overlap_t = 0;      // |<t|psi(gamma)>|
  double final_overlap_ground = 0; // fidelity with the instantaneous ground state
  double min_inst_fidelity = 0;    // minimum of that fidelity over the path
  double unitarity_defect = 0;     // max | ||psi|| - 1 | over the path
};

struct Trajectory {
  std::vector<double> tau, mu, ground_fidelity, overlap_t, norm_defect;
};

using Complex = std::complex<double>;

// Piecewise-constant midpoint propagation: each step applies the exact
// unitary of H(mu(tau_mid)) through the rank-one eigenstructure.  initial
// empty = start from |s>.  traj, when given, receives steps+1 boundary rows
// (a single row when gamma = 0).
EvolutionResult propagate(const Instance &inst, const Schedule &s,
                          std::span<const Complex> initial = {},
                          Trajectory *traj = nullptr);

// Same propagator under an arbitrary path mu(tau); used by tests and the
// schedule machinery.
EvolutionResult propagate_path(const Instance &inst,
                               const std::function<double(double)> &mu_of_tau,
                               double gamma, std::int64_t steps,
                               std::span<const Complex> initial = {},
                               Trajectory *traj = nullptr);

struct TrialStats {
  std::int64_t trials = 0;
  std::int64_t successes = 0;
  double estimated_p = 0;
  double std_error = 0;
  double deterministic_p = 0; // |<t|psi(gamma)>|^2 of the coherent pipeline
};

// Sudden switch to H(mu-), linear sweep to H(mu+) over gamma, projective
// measurement of |t>, repeated `trials` times with per-trial seeded draws.
TrialStats run_partial_algorithm(const Instance &inst, double c, double gamma,
                                 std::int64_t steps, std::int64_t trials,
                                 std::uint64_t seed);

struct RequiredTime {
  double gamma = 0;
  double achieved_p = 0;
  std::int64_t evaluations = 0;
  bool nonmonotone = false; // success probability dipped during the search
  bool capped = false;
};

class CapExceeded : public Error {
public:
  CapExceeded(const std::string &msg, RequiredTime best)
      : Error(ErrorCode::cap_exceeded, msg), best_(best) {}
  const RequiredTime &best() const { return best_; }

private:
  RequiredTime best_;
};

// Smallest gamma whose deterministic success probability reaches target_p:
// doubling then bisection to relative width rel_tol; throws CapExceeded
// (carrying the best point found) when gamma_cap is passed.
RequiredTime required_time(const Instance &inst, const Schedule &base,
                           double target_p, double rel_tol = 0.05,
                           double gamma_cap = 1e7);

// Exact large-gamma success plateau of the partial pipeline: the projection
// product |<s|ground(mu-)>|^2 |<t|ground(mu+)>|^2 through the exact ground
// states at the window edges.
double plateau_success(const Instance &inst, double c);

} // namespace projgap
