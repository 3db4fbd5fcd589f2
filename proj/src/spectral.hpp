#pragma once

#include <cstdint>
#include <vector>

#include "instance.hpp"

namespace projgap {

// H(mu) = (1-mu) diag(xi) - mu t t^T is block diagonal: levels with zero
// target weight decouple, equal-xi weighted levels contribute one coupled
// direction plus pinned copies.  This structure is mu-independent and drives
// both the eigensolver and the propagator.
struct RankOneStructure {
  std::vector<double> pole_xi;                   // distinct xi among weighted levels, ascending
  std::vector<double> pole_w2;                   // summed squared weight per pole
  std::vector<std::vector<std::size_t>> members; // level indices per pole
  std::vector<std::size_t> silent;               // zero-weight levels
  double silent_xi_min;                          // +inf when none
  double silent_xi_second;                       // +inf when fewer than two
};

RankOneStructure analyze(const Instance &inst);

// Secular function sum_l t_l^2/(xi_l (1-mu) - energy) - 1/mu for mu in (0,1].
// Strictly increasing in energy between consecutive weighted poles.
double secular_value(const Instance &inst, double mu, double energy);

// Roots of the reduced secular equation for scaled poles d (ascending,
// distinct) with squared weights w2: one root below d[0] (bracketed by
// -mu <= E0), one root inside each (d[j-1], d[j]).  Bisection to width tol.
std::vector<double> secular_roots(const std::vector<double> &d,
                                  const std::vector<double> &w2, double mu,
                                  double tol);

// All eigenvalues of H(mu), ascending.  mu in [0,1]; endpoints are exact.
std::vector<double> exact_eigenvalues(const Instance &inst, double mu);

struct GroundState {
  double mu = 0;
  double energy = 0;         // E0
  double excited_energy = 0; // E1
  double gap = 0;
  double overlap_s = 0; // |<s|E0>|
  double overlap_t = 0; // |<t|E0>|
  bool gap_tie = false; // E1 tied with the next level within 1e-12
};

// Ground/first-excited data without the full spectrum; mu in [0,1].
GroundState exact_ground(const Instance &inst, double mu);

double exact_gap(const Instance &inst, double mu);

struct GapMinimum {
  double mu = 0;
  double gap = 0;
};

// Uniform scan of the exact gap over [0,1] followed by golden-section
// refinement.  grid_points = 0 picks a grid fine enough for the crossover
// dip; explicit values must be >= 64.  refine_tol <= 0 selects 1e-10.
GapMinimum min_gap_scan(const Instance &inst, std::int64_t grid_points = 0,
                        double refine_tol = 1e-10);

// Dense symmetric matrices, row-major.
struct SymMatrix {
  std::size_t n = 0;
  std::vector<double> a; // n*n
  double &at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

SymMatrix build_hmu(const Instance &inst, double mu);

struct EigenDecomposition {
  std::size_t n = 0;
  std::vector<double> values;  // ascending
  std::vector<double> vectors; // row-major; column k is eigenvector k
  double vector(std::size_t i, std::size_t k) const { return vectors[i * n + k]; }
};

// Cyclic Jacobi rotations to off-diagonal norm <= 1e-13 ||m||_F.  Independent
// of the secular path so the two can cross-validate.
EigenDecomposition dense_eigensolver(const SymMatrix &m);

// Spectral norm of H_s - H_t = diag(xi) + t t^T: dense oracle for n <= 512,
// rank-one secular route above that.
double hs_minus_ht_norm(const Instance &inst);

// Components of the normalized ground eigenvector of H(mu) in the level
// basis (real in this basis).  Used by the propagator's fidelity trace.
void ground_vector(const Instance &inst, const RankOneStructure &s, double mu,
                   std::vector<double> &out);

} // namespace projgap
