#include "validate.hpp"

#include <algorithm>
#include <cmath>

#include "analytic.hpp"
#include "errors.hpp"
#include "spectral.hpp"

namespace projgap {

namespace {

Instance truncate_for_oracle(const Instance &inst, std::int64_t max_n) {
  std::size_t m = static_cast<std::size_t>(max_n);
  if (inst.size() <= m)
    return inst;
  std::vector<double> xi(inst.xi.begin(), inst.xi.begin() + m);
  std::vector<double> t(inst.t_overlap.begin(), inst.t_overlap.begin() + m);
  double norm2 = 0.0;
  for (double w : t)
    norm2 += w * w;
  if (norm2 < 1e-12)
    fail(ErrorCode::invalid_argument,
         "cannot truncate for the dense oracle: leading levels carry no "
         "target weight");
  double inv = 1.0 / std::sqrt(norm2);
  for (double &w : t)
    w *= inv;
  return make_instance(std::move(xi), std::move(t));
}

} // namespace

ValidationReport run_validation(const Instance &inst,
                                const ValidationOptions &options) {
  ValidationReport rep;
  Instance sub = truncate_for_oracle(inst, options.dense_max_n);
  rep.oracle_n = static_cast<std::int64_t>(sub.size());

  std::vector<double> mus;
  for (std::int64_t i = 0; i < options.mu_samples; ++i)
    mus.push_back(static_cast<double>(i + 1) /
                  static_cast<double>(options.mu_samples + 1));

  rep.interlacing_ok = true;
  rep.one_negative_ok = true;
  RankOneStructure s = analyze(sub);
  double tol = 1e-13 * std::max(1.0, sub.xi.back());
  for (double mu : mus) {
    std::vector<double> secular = exact_eigenvalues(sub, mu);
    EigenDecomposition dense = dense_eigensolver(build_hmu(sub, mu));
    for (std::size_t i = 0; i < sub.size(); ++i)
      rep.max_eigenvalue_err = std::max(
          rep.max_eigenvalue_err, std::abs(secular[i] - dense.values[i]));

    GroundState g = exact_ground(sub, mu);
    double dense_s = std::abs(dense.vector(0, 0));
    double dense_t = 0.0;
    for (std::size_t l = 0; l < sub.size(); ++l)
      dense_t += sub.t_overlap[l] * dense.vector(l, 0);
    dense_t = std::abs(dense_t);
    rep.max_overlap_err = std::max(rep.max_overlap_err,
                                   std::abs(g.overlap_s - dense_s));
    rep.max_overlap_err = std::max(rep.max_overlap_err,
                                   std::abs(g.overlap_t - dense_t));

    double scale = 1.0 - mu;
    std::vector<double> d(s.pole_xi.size());
    for (std::size_t j = 0; j < d.size(); ++j)
      d[j] = s.pole_xi[j] * scale;
    std::vector<double> roots = secular_roots(d, s.pole_w2, mu, tol);
    for (std::size_t j = 0; j < roots.size(); ++j) {
      double lo = j == 0 ? -mu : d[j - 1];
      if (!(roots[j] >= lo && roots[j] < d[j]))
        rep.interlacing_ok = false;
    }

    std::size_t negatives = 0;
    for (double e : secular)
      if (e < 0.0)
        ++negatives;
    bool ok = sub.alpha() > 0.0 ? negatives == 1 : negatives <= 1;
    if (!ok)
      rep.one_negative_ok = false;
  }
  rep.eigenvalues_ok = rep.max_eigenvalue_err <= options.oracle_tol;
  rep.overlaps_ok = rep.max_overlap_err <= options.overlap_tol;

  auto cs_holds = [](const Instance &x) {
    double u1 = overlap_moment(x, 1);
    double u2 = overlap_moment(x, 2);
    return u1 * u1 <= u2 * (1.0 + 1e-12);
  };
  rep.cauchy_schwarz_ok = cs_holds(inst);
  const double alphas[] = {0.05, 0.1, 0.2, 0.3};
  for (std::int64_t seed = 0; seed < options.sweep; ++seed) {
    Instance r = make_random(2 + seed % 15, static_cast<std::uint64_t>(seed),
                             1.0, alphas[seed % 4]);
    if (!cs_holds(r))
      ++rep.sweep_violations;
  }

  rep.assumptions = check_assumptions(inst);

  try {
    CrossoverWindow w = crossover_window(inst, options.c);
    std::int64_t rows = std::max<std::int64_t>(options.mu_samples, 5);
    for (std::int64_t i = 0; i < rows; ++i) {
      double mu = w.mu_minus + (w.mu_plus - w.mu_minus) * static_cast<double>(i) /
                                   static_cast<double>(rows - 1);
      AnalyticProfile p = profile_at(inst, mu);
      OverlapEstimate est = ground_overlaps_analytic(inst, mu, options.c);
      GroundState g = exact_ground(inst, mu);
      ValidationReport::ErrorRow row;
      row.mu = mu;
      row.energy_err = std::abs(p.e_minus - g.energy);
      row.overlap_s_err = std::abs(est.overlap_s - g.overlap_s);
      row.overlap_t_err = std::abs(est.overlap_t - g.overlap_t);
      row.validity_pass = validity_check(inst, mu, options.c).pass;
      rep.analytic_table.push_back(row);
    }
    rep.analytic_table_available = true;
  } catch (const Error &) {
    rep.analytic_table_available = false;
  }

  rep.all_ok = rep.eigenvalues_ok && rep.overlaps_ok && rep.interlacing_ok &&
               rep.one_negative_ok && rep.cauchy_schwarz_ok &&
               rep.sweep_violations == 0;
  return rep;
}

} // namespace projgap
