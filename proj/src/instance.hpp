#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace projgap {

// A problem instance: the spectrum of the initial Hamiltonian H_s (shifted so
// the ground level sits at 0) and the magnitudes of the target state's
// components in the H_s eigenbasis.  Everything else the library computes is
// a function of these two arrays.  Instances are immutable after construction
// and safe to share across threads.
struct Instance {
  std::vector<double> xi;        // ascending, xi[0] == 0, xi[1] > 0
  std::vector<double> t_overlap; // nonnegative, unit sum of squares
  bool reversed = false;         // built from a time-reversed problem; report mu as 1-mu

  std::size_t size() const { return xi.size(); }
  double alpha() const { return t_overlap[0]; } // |<s|t>|
};

// Validating constructor used by every builder below.
Instance make_instance(std::vector<double> xi, std::vector<double> t_overlap,
                       bool reversed = false);

// Search instance: H_s = 1 - |u><u|, target a basis state.  The (n-1)-fold
// degenerate excited space is rotated so all target weight sits on one
// excited vector; only overlap magnitudes matter downstream.
Instance make_grover(std::int64_t n);

// Seeded test-ensemble generator; a pure function of its arguments.
Instance make_random(std::int64_t n, std::uint64_t seed, double xi_max,
                     double alpha);

// Time-reversed problem (start Hamiltonian -|s><s|, general final
// Hamiltonian): ht_spectrum and s_overlap become xi/t_overlap and the
// reversed flag is set so reports map mu -> 1-mu.
Instance make_reversed(std::vector<double> ht_spectrum,
                       std::vector<double> s_overlap);

Instance rescale(const Instance &inst, double factor);

// sum_{l>=1} t_overlap[l]^2 / xi[l]^p, p in {1,2}.
double overlap_moment(const Instance &inst, int p);

struct AssumptionThresholds {
  double alpha_ratio_max = 0.1;  // alpha/xi1       (want small)
  double spread_ratio_min = 0.1; // xi1/xi[n-1]     (want not small)
  double top_level_max = 10.0;   // xi[n-1]         (want not large)
};

struct AssumptionReport {
  double alpha_over_xi1 = 0;
  double xi1_over_xin1 = 0;
  double xin1 = 0;
  bool alpha_ok = false;
  bool spread_ok = false;
  bool top_ok = false;
  bool all_ok = false;
};

AssumptionReport check_assumptions(const Instance &inst,
                                   const AssumptionThresholds &thresholds = {});

// JSON file format: {"xi": [...], "t_overlap": [...]} (optional "reversed").
Instance load_instance(const std::string &path);
void save_instance(const Instance &inst, const std::string &path);
Instance instance_from_json_text(const std::string &text);
std::string instance_to_json_text(const Instance &inst);

} // namespace projgap
