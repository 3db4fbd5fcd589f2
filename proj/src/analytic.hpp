#pragma once

#include "instance.hpp"

namespace projgap {

// Closed-form two-level reduction of the crossover region.  All quantities
// follow from the two overlap moments and alpha; valid where the ground and
// first excited energies stay small against (1-mu) xi1.
struct AnalyticProfile {
  double mu = 0;
  double detuning = 0;       // A: effective two-level detuning
  double coupling_scale = 0; // B: response coefficient; alpha/B sets the gap scale
  double eta = 0;            // mixing angle in (0, pi/2)
  double e_minus = 0;        // model ground energy
  double e_plus = 0;         // model first excited energy
  double gap = 0;            // 2 alpha csc(2 eta) / B
  double epsilon = 0;        // relative offset 1 - mu_star/mu
};

AnalyticProfile profile_at(const Instance &inst, double mu);

// Per-instance crossover summary for a window parameter c.
struct InstanceSummary {
  double c = 0;
  double mu_star = 0;            // crossover point 1/(1+moment1)
  double omega = 0;              // crossover sharpness
  double mu_min = 0;             // model location of the minimum gap
  double g_min = 0;              // model minimum gap
  double mu_minus = 0;           // sweep window
  double mu_plus = 0;
  double plateau_overlap = 0;    // |<t|ground>| reached at mu_plus, leading order
  double p_success = 0;          // success probability of the partial pipeline
  double partial_time_bound = 0; // leading-order runtime bound of the pipeline
  double h_distance_norm = 0;    // ||H_s - H_t||
  double full_time_bound = 0;    // h_distance_norm / g_min^2
  bool margin_c_omega_ok = false; // c <= omega/4
  bool margin_c_alpha_ok = false; // c <= xi1/(4 alpha)
};

InstanceSummary summarize(const Instance &inst, double c = 4.0);

// Crossover geometry without a window parameter; cheap enough for inner loops.
struct CrossoverGeometry {
  double mu_star = 0;
  double omega = 0;
  double g_min = 0;
};

CrossoverGeometry crossover_geometry(const Instance &inst);

// Geometry plus the sweep window edges for a window parameter c (validated).
struct CrossoverWindow {
  double mu_star = 0;
  double omega = 0;
  double mu_minus = 0;
  double mu_plus = 0;
  double g_min = 0;
};

CrossoverWindow crossover_window(const Instance &inst, double c);

struct OverlapEstimate {
  double overlap_s = 0;         // sin(eta)
  double overlap_t = 0;         // (1/mu - 1) cos(eta) / sqrt(moment2)
  bool outside_validity = false; // farther than 4c/omega from the crossover
};

OverlapEstimate ground_overlaps_analytic(const Instance &inst, double mu,
                                         double c = 4.0);

struct ValidityCheck {
  double lhs = 0;          // alpha csc(2 eta)
  double rhs = 0;          // xi1 sqrt(moment2) / 2
  double ratio = 0;
  double margin = 0;       // threshold - ratio
  double window_bound = 0; // alpha sqrt(1+c^2)
  bool pass = false;
};

ValidityCheck validity_check(const Instance &inst, double mu, double c = 4.0,
                             double threshold = 0.1);

} // namespace projgap
