#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "errors.hpp"

namespace projgap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTieTol = 1e-12;

double root_tol(const Instance &inst) {
  return 1e-13 * std::max(1.0, inst.xi.back());
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

double reduced_secular(const std::vector<double> &d,
                       const std::vector<double> &w2, double mu, double e) {
  double sum = 0.0;
  for (std::size_t j = 0; j < d.size(); ++j)
    sum += w2[j] / (d[j] - e);
  return sum - 1.0 / mu;
}

// Bisection for the unique root in (lo, hi) where the secular function runs
// from negative to positive.  lo_value_known: f(lo) is finite and <= 0
// (otherwise lo is a pole).  Never evaluates at the endpoints.
double bisect_increasing(const std::vector<double> &d,
                         const std::vector<double> &w2, double mu, double lo,
                         double hi, double tol) {
  for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      break;
    if (reduced_secular(d, w2, mu, mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Root below the lowest pole; bracketed by E >= -mu (H(mu) >= -mu).
double root_below(const std::vector<double> &d, const std::vector<double> &w2,
                  double mu, double tol) {
  double lo = -mu;
  if (reduced_secular(d, w2, mu, lo) >= 0.0)
    return lo;
  return bisect_increasing(d, w2, mu, lo, d.front(), tol);
}

double root_in_interval(const std::vector<double> &d,
                        const std::vector<double> &w2, double mu,
                        std::size_t j, double tol) {
  return bisect_increasing(d, w2, mu, d[j - 1], d[j], tol);
}

struct GroundCandidates {
  // Up to the three smallest eigenvalues with enough context for overlaps.
  std::vector<double> values;
  bool ground_is_secular = true;
  double secular_root = 0;
};

GroundCandidates lowest_candidates(const RankOneStructure &s, double mu,
                                   double tol) {
  std::size_t k = s.pole_xi.size();
  double scale = 1.0 - mu;
  std::vector<double> d(k), w2 = s.pole_w2;
  for (std::size_t j = 0; j < k; ++j)
    d[j] = s.pole_xi[j] * scale;

  double r0 = root_below(d, w2, mu, tol);
  std::vector<double> cands{r0};
  if (k >= 2)
    cands.push_back(root_in_interval(d, w2, mu, 1, tol));
  if (k >= 3)
    cands.push_back(root_in_interval(d, w2, mu, 2, tol));
  std::size_t m0 = s.members[0].size();
  if (m0 >= 2)
    cands.push_back(d[0]);
  if (m0 >= 3)
    cands.push_back(d[0]);
  if (k >= 2 && s.members[1].size() >= 2)
    cands.push_back(d[1]);
  if (s.silent_xi_min < kInf)
    cands.push_back(s.silent_xi_min * scale);
  if (s.silent_xi_second < kInf)
    cands.push_back(s.silent_xi_second * scale);
  std::sort(cands.begin(), cands.end());

  GroundCandidates out;
  out.values = std::move(cands);
  out.secular_root = r0;
  out.ground_is_secular = out.values.front() >= r0; // r0 is the smallest root
  return out;
}

double golden_section_min(const Instance &inst, double lo, double hi,
                          double tol, double &best_mu, double &best_gap) {
  const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = exact_gap(inst, x1);
  double f2 = exact_gap(inst, x2);
  auto consider = [&](double mu, double g) {
    if (g < best_gap) {
      best_gap = g;
      best_mu = mu;
    }
  };
  consider(x1, f1);
  consider(x2, f2);
  for (int iter = 0; iter < 400 && b - a > tol; ++iter) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = exact_gap(inst, x1);
      consider(x1, f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = exact_gap(inst, x2);
      consider(x2, f2);
    }
  }
  return 0.5 * (a + b);
}

void check_mu_range(double mu, double lo, double hi) {
  if (!(mu >= lo && mu <= hi))
    fail(ErrorCode::domain, "mu must lie in [" + num(lo) + ", " + num(hi) +
                                "], got " + num(mu));
}

} // namespace

RankOneStructure analyze(const Instance &inst) {
  RankOneStructure s;
  s.silent_xi_min = kInf;
  s.silent_xi_second = kInf;
  for (std::size_t l = 0; l < inst.size(); ++l) {
    if (inst.t_overlap[l] == 0.0) {
      s.silent.push_back(l);
      double x = inst.xi[l];
      if (x < s.silent_xi_min) {
        s.silent_xi_second = s.silent_xi_min;
        s.silent_xi_min = x;
      } else if (x < s.silent_xi_second) {
        s.silent_xi_second = x;
      }
      continue;
    }
    double w2 = inst.t_overlap[l] * inst.t_overlap[l];
    if (!s.pole_xi.empty() && inst.xi[l] == s.pole_xi.back()) {
      s.pole_w2.back() += w2;
      s.members.back().push_back(l);
    } else {
      s.pole_xi.push_back(inst.xi[l]);
      s.pole_w2.push_back(w2);
      s.members.push_back({l});
    }
  }
  return s;
}

double secular_value(const Instance &inst, double mu, double energy) {
  if (!(mu > 0.0 && mu <= 1.0))
    fail(ErrorCode::domain,
         "secular function needs mu in (0,1], got " + num(mu));
  double scale = 1.0 - mu;
  double sum = 0.0;
  for (std::size_t l = 0; l < inst.size(); ++l) {
    double w = inst.t_overlap[l];
    if (w == 0.0)
      continue;
    double denom = inst.xi[l] * scale - energy;
    if (denom == 0.0)
      fail(ErrorCode::pole, "energy " + num(energy) +
                                " sits on the pole of level " +
                                std::to_string(l));
    sum += w * w / denom;
  }
  return sum - 1.0 / mu;
}

std::vector<double> secular_roots(const std::vector<double> &d,
                                  const std::vector<double> &w2, double mu,
                                  double tol) {
  std::vector<double> roots;
  roots.reserve(d.size());
  roots.push_back(root_below(d, w2, mu, tol));
  for (std::size_t j = 1; j < d.size(); ++j)
    roots.push_back(root_in_interval(d, w2, mu, j, tol));
  return roots;
}

std::vector<double> exact_eigenvalues(const Instance &inst, double mu) {
  check_mu_range(mu, 0.0, 1.0);
  std::size_t n = inst.size();
  if (mu == 0.0)
    return inst.xi;
  if (mu == 1.0) {
    std::vector<double> vals(n, 0.0);
    vals[0] = -1.0;
    return vals;
  }
  RankOneStructure s = analyze(inst);
  double scale = 1.0 - mu;
  std::size_t k = s.pole_xi.size();
  std::vector<double> d(k);
  for (std::size_t j = 0; j < k; ++j)
    d[j] = s.pole_xi[j] * scale;

  std::vector<double> vals = secular_roots(d, s.pole_w2, mu, root_tol(inst));
  for (std::size_t j = 0; j < k; ++j) {
    // Interlacing: each root must sit strictly below its right pole.
    if (vals[j] >= d[j])
      fail(ErrorCode::invalid_argument,
           "interlacing violated at pole " + std::to_string(j));
    for (std::size_t copy = 1; copy < s.members[j].size(); ++copy)
      vals.push_back(d[j]);
  }
  for (std::size_t idx : s.silent)
    vals.push_back(inst.xi[idx] * scale);
  std::sort(vals.begin(), vals.end());
  return vals;
}

GroundState exact_ground(const Instance &inst, double mu) {
  check_mu_range(mu, 0.0, 1.0);
  GroundState g;
  g.mu = mu;
  std::size_t n = inst.size();
  if (mu == 0.0) {
    g.energy = 0.0;
    g.excited_energy = inst.xi[1];
    g.gap = inst.xi[1];
    g.overlap_s = 1.0;
    g.overlap_t = inst.alpha();
    g.gap_tie = n > 2 && inst.xi[2] - inst.xi[1] <= kTieTol;
    return g;
  }
  if (mu == 1.0) {
    g.energy = -1.0;
    g.excited_energy = 0.0;
    g.gap = 1.0;
    g.overlap_s = inst.alpha();
    g.overlap_t = 1.0;
    g.gap_tie = n > 2; // the zero eigenvalue of -|t><t| is (n-1)-fold
    return g;
  }

  RankOneStructure s = analyze(inst);
  double tol = root_tol(inst);
  GroundCandidates c = lowest_candidates(s, mu, tol);
  g.energy = c.values[0];
  g.excited_energy = c.values.size() > 1 ? c.values[1] : kInf;
  g.gap = g.excited_energy - g.energy;
  g.gap_tie = c.values.size() > 2 && c.values[2] - c.values[1] <= kTieTol;

  if (c.ground_is_secular) {
    double e0 = c.secular_root;
    double scale = 1.0 - mu;
    double s2 = 0.0;
    for (std::size_t j = 0; j < s.pole_xi.size(); ++j) {
      double diff = s.pole_xi[j] * scale - e0;
      s2 += s.pole_w2[j] / (diff * diff);
    }
    g.overlap_t = 1.0 / (mu * std::sqrt(s2));
    double a = inst.alpha();
    g.overlap_s = a > 0.0 ? mu * a * g.overlap_t / std::abs(e0) : 0.0;
  } else {
    // A decoupled level is the ground state (possible only when alpha = 0).
    g.overlap_s = s.silent_xi_min == 0.0 ? 1.0 : 0.0;
    g.overlap_t = 0.0;
  }
  return g;
}

double exact_gap(const Instance &inst, double mu) {
  return exact_ground(inst, mu).gap;
}

GapMinimum min_gap_scan(const Instance &inst, std::int64_t grid_points,
                        double refine_tol) {
  if (grid_points != 0 && grid_points < 64)
    fail(ErrorCode::invalid_argument,
         "min-gap scan needs at least 64 grid points, got " +
             std::to_string(grid_points));
  if (refine_tol <= 0.0)
    refine_tol = 1e-10;
  std::int64_t grid = grid_points;
  if (grid == 0) {
    double a = inst.alpha();
    if (a > 0.0) {
      // The gap dip has width ~1/omega; sample it with >= 16 points.
      double u2 = overlap_moment(inst, 2);
      double want = std::ceil(8.0 / (a * std::sqrt(u2)));
      grid = static_cast<std::int64_t>(std::min(want, 2.0e6));
    } else {
      grid = 4096;
    }
    grid = std::max<std::int64_t>(grid, 64);
  }

  double best_mu = 0.0, best_gap = kInf;
  std::size_t best_i = 0;
  std::vector<double> mus(static_cast<std::size_t>(grid));
  for (std::int64_t i = 0; i < grid; ++i) {
    double mu = static_cast<double>(i) / static_cast<double>(grid - 1);
    mus[static_cast<std::size_t>(i)] = mu;
    double gp = exact_gap(inst, mu);
    if (gp < best_gap) {
      best_gap = gp;
      best_mu = mu;
      best_i = static_cast<std::size_t>(i);
    }
  }
  double lo = mus[best_i == 0 ? 0 : best_i - 1];
  double hi = mus[std::min(best_i + 1, mus.size() - 1)];
  if (hi > lo) {
    double mid = golden_section_min(inst, lo, hi, refine_tol, best_mu, best_gap);
    double g_mid = exact_gap(inst, mid);
    if (g_mid < best_gap) {
      best_gap = g_mid;
      best_mu = mid;
    }
  }
  return GapMinimum{best_mu, best_gap};
}

SymMatrix build_hmu(const Instance &inst, double mu) {
  std::size_t n = inst.size();
  SymMatrix m;
  m.n = n;
  m.a.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      m.at(i, j) = -mu * inst.t_overlap[i] * inst.t_overlap[j];
    m.at(i, i) += (1.0 - mu) * inst.xi[i];
  }
  return m;
}

EigenDecomposition dense_eigensolver(const SymMatrix &m) {
  std::size_t n = m.n;
  if (n == 0 || m.a.size() != n * n)
    fail(ErrorCode::invalid_argument, "dense eigensolver: malformed matrix");
  double maxabs = 0.0;
  for (double v : m.a)
    maxabs = std::max(maxabs, std::abs(v));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(m.at(i, j) - m.at(j, i)) > 1e-12 * std::max(1.0, maxabs))
        fail(ErrorCode::invalid_argument,
             "dense eigensolver needs a symmetric matrix; entry (" +
                 std::to_string(i) + "," + std::to_string(j) + ") differs");

  std::vector<double> a = m.a;
  std::vector<double> v(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    v[i * n + i] = 1.0;

  double frob = 0.0;
  for (double x : a)
    frob += x * x;
  frob = std::sqrt(frob);
  const double target = 1e-13 * frob;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        off += 2.0 * a[p * n + q] * a[p * n + q];
    off = std::sqrt(off);
    if (off <= target || off == 0.0)
      break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double apq = a[p * n + q];
        if (apq == 0.0)
          continue;
        double app = a[p * n + p], aqq = a[q * n + q];
        double theta = (aqq - app) / (2.0 * apq);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0)
          t = -t;
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double sn = t * c;
        for (std::size_t i = 0; i < n; ++i) {
          double aip = a[i * n + p], aiq = a[i * n + q];
          a[i * n + p] = c * aip - sn * aiq;
          a[i * n + q] = sn * aip + c * aiq;
        }
        for (std::size_t j = 0; j < n; ++j) {
          double apj = a[p * n + j], aqj = a[q * n + j];
          a[p * n + j] = c * apj - sn * aqj;
          a[q * n + j] = sn * apj + c * aqj;
        }
        for (std::size_t i = 0; i < n; ++i) {
          double vip = v[i * n + p], viq = v[i * n + q];
          v[i * n + p] = c * vip - sn * viq;
          v[i * n + q] = sn * vip + c * viq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i)
    order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a[x * n + x] < a[y * n + y];
  });

  EigenDecomposition out;
  out.n = n;
  out.values.resize(n);
  out.vectors.assign(n * n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a[order[k] * n + order[k]];
    for (std::size_t i = 0; i < n; ++i)
      out.vectors[i * n + k] = v[i * n + order[k]];
  }
  return out;
}

double hs_minus_ht_norm(const Instance &inst) {
  std::size_t n = inst.size();
  if (n <= 512) {
    SymMatrix m;
    m.n = n;
    m.a.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j)
        m.at(i, j) = inst.t_overlap[i] * inst.t_overlap[j];
      m.at(i, i) += inst.xi[i];
    }
    EigenDecomposition e = dense_eigensolver(m);
    return std::max(std::abs(e.values.front()), std::abs(e.values.back()));
  }
  // diag(xi) + t t^T: largest eigenvalue is the single root above the top
  // weighted pole; decoupled levels keep their xi.
  RankOneStructure s = analyze(inst);
  const std::vector<double> &p = s.pole_xi;
  const std::vector<double> &w2 = s.pole_w2;
  double wsum = 0.0;
  for (double w : w2)
    wsum += w;
  double lo = p.back(), hi = p.back() + wsum;
  auto f = [&](double lam) {
    double sum = 1.0;
    for (std::size_t j = 0; j < p.size(); ++j)
      sum += w2[j] / (p[j] - lam);
    return sum;
  };
  double tol = 1e-13 * std::max(1.0, hi);
  for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      break;
    if (f(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  double top = 0.5 * (lo + hi);
  return std::max(top, inst.xi.back());
}

void ground_vector(const Instance &inst, const RankOneStructure &s, double mu,
                   std::vector<double> &out) {
  std::size_t n = inst.size();
  out.assign(n, 0.0);
  if (mu == 0.0) {
    out[0] = 1.0;
    return;
  }
  if (mu == 1.0) {
    out = inst.t_overlap;
    return;
  }
  double scale = 1.0 - mu;
  double tol = root_tol(inst);
  std::size_t k = s.pole_xi.size();
  std::vector<double> d(k);
  for (std::size_t j = 0; j < k; ++j)
    d[j] = s.pole_xi[j] * scale;
  double e0 = root_below(d, s.pole_w2, mu, tol);
  double silent_min = s.silent_xi_min * scale;
  if (silent_min < e0) {
    // Decoupled ground level (alpha = 0): indicator vector.
    for (std::size_t idx : s.silent)
      if (inst.xi[idx] == s.silent_xi_min) {
        out[idx] = 1.0;
        return;
      }
  }
  double norm2 = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    double w = inst.t_overlap[l];
    if (w == 0.0)
      continue;
    out[l] = w / (inst.xi[l] * scale - e0);
    norm2 += out[l] * out[l];
  }
  double inv = 1.0 / std::sqrt(norm2);
  for (double &x : out)
    x *= inv;
}

} // namespace projgap
