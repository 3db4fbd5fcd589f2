#include "instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"

namespace projgap {

namespace {

constexpr double kNormTol = 1e-12;

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// Uniform double in (0,1] from the top 53 bits of a 64-bit draw.  Hand-mapped
// so the generator output does not depend on the standard library's
// distribution implementation.
double uniform_0_1_closed(std::mt19937_64 &rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

double uniform_0_1_open(std::mt19937_64 &rng) {
  for (;;) {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u > 0.0)
      return u;
  }
}

void validate(const std::vector<double> &xi, const std::vector<double> &t) {
  if (xi.size() < 2)
    fail(ErrorCode::format, "instance needs at least 2 levels, got " +
                                std::to_string(xi.size()));
  if (t.size() != xi.size())
    fail(ErrorCode::format, "xi and t_overlap lengths differ (" +
                                std::to_string(xi.size()) + " vs " +
                                std::to_string(t.size()) + ")");
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (!std::isfinite(xi[i]))
      fail(ErrorCode::format, "xi[" + std::to_string(i) + "] is not finite");
    if (!std::isfinite(t[i]))
      fail(ErrorCode::format,
           "t_overlap[" + std::to_string(i) + "] is not finite");
  }
  if (xi[0] != 0.0)
    fail(ErrorCode::format, "xi[0] must be 0, got " + num(xi[0]));
  for (std::size_t i = 1; i < xi.size(); ++i)
    if (xi[i] < xi[i - 1])
      fail(ErrorCode::format, "xi must be sorted ascending: xi[" +
                                  std::to_string(i) + "]=" + num(xi[i]) +
                                  " < xi[" + std::to_string(i - 1) +
                                  "]=" + num(xi[i - 1]));
  if (xi[1] <= 0.0)
    fail(ErrorCode::format,
         "ground level must be non-degenerate: xi[1] must be > 0, got " +
             num(xi[1]));
  double norm2 = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < 0.0)
      fail(ErrorCode::format,
           "t_overlap[" + std::to_string(i) + "] must be >= 0, got " + num(t[i]));
    norm2 += t[i] * t[i];
  }
  if (std::abs(norm2 - 1.0) > kNormTol)
    fail(ErrorCode::format,
         "t_overlap must have unit sum of squares within 1e-12, got " +
             num(norm2));
}

} // namespace

Instance make_instance(std::vector<double> xi, std::vector<double> t_overlap,
                       bool reversed) {
  validate(xi, t_overlap);
  return Instance{std::move(xi), std::move(t_overlap), reversed};
}

Instance make_grover(std::int64_t n) {
  if (n < 2)
    fail(ErrorCode::invalid_argument,
         "grover instance needs n >= 2, got " + std::to_string(n));
  double a = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<double> xi(static_cast<std::size_t>(n), 1.0);
  xi[0] = 0.0;
  std::vector<double> t(static_cast<std::size_t>(n), 0.0);
  t[0] = a;
  t[1] = std::sqrt(1.0 - 1.0 / static_cast<double>(n));
  return make_instance(std::move(xi), std::move(t));
}

Instance make_random(std::int64_t n, std::uint64_t seed, double xi_max,
                     double alpha) {
  if (n < 2)
    fail(ErrorCode::invalid_argument,
         "random instance needs n >= 2, got " + std::to_string(n));
  if (!(xi_max > 0.0))
    fail(ErrorCode::invalid_argument, "xi_max must be > 0, got " + num(xi_max));
  if (!(alpha > 0.0 && alpha < 1.0))
    fail(ErrorCode::invalid_argument,
         "alpha must lie in (0,1), got " + num(alpha));

  std::mt19937_64 rng(seed);
  std::size_t count = static_cast<std::size_t>(n);
  std::vector<double> xi(count, 0.0);
  // Excited levels on (xi_max/2, xi_max] keep xi1/xi[n-1] >= 1/2.
  for (std::size_t i = 1; i < count; ++i)
    xi[i] = xi_max * 0.5 * (1.0 + uniform_0_1_closed(rng));
  std::sort(xi.begin() + 1, xi.end());

  std::vector<double> t(count, 0.0);
  t[0] = alpha;
  double sum2 = 0.0;
  for (std::size_t i = 1; i < count; ++i) {
    t[i] = uniform_0_1_open(rng);
    sum2 += t[i] * t[i];
  }
  double scale = std::sqrt((1.0 - alpha * alpha) / sum2);
  for (std::size_t i = 1; i < count; ++i)
    t[i] *= scale;
  return make_instance(std::move(xi), std::move(t));
}

Instance make_reversed(std::vector<double> ht_spectrum,
                       std::vector<double> s_overlap) {
  return make_instance(std::move(ht_spectrum), std::move(s_overlap), true);
}

Instance rescale(const Instance &inst, double factor) {
  if (!(factor > 0.0))
    fail(ErrorCode::invalid_argument,
         "rescale factor must be > 0, got " + num(factor));
  std::vector<double> xi = inst.xi;
  for (double &x : xi)
    x *= factor;
  xi[0] = 0.0;
  return make_instance(std::move(xi), inst.t_overlap, inst.reversed);
}

double overlap_moment(const Instance &inst, int p) {
  if (p != 1 && p != 2)
    fail(ErrorCode::invalid_argument,
         "overlap moment order must be 1 or 2, got " + std::to_string(p));
  double sum = 0.0;
  for (std::size_t l = 1; l < inst.size(); ++l) {
    double w = inst.t_overlap[l];
    if (w == 0.0)
      continue;
    double d = p == 1 ? inst.xi[l] : inst.xi[l] * inst.xi[l];
    sum += w * w / d;
  }
  return sum;
}

AssumptionReport check_assumptions(const Instance &inst,
                                   const AssumptionThresholds &thresholds) {
  AssumptionReport r;
  double xi1 = inst.xi[1];
  double xin1 = inst.xi.back();
  r.alpha_over_xi1 = inst.alpha() / xi1;
  r.xi1_over_xin1 = xi1 / xin1;
  r.xin1 = xin1;
  r.alpha_ok = r.alpha_over_xi1 <= thresholds.alpha_ratio_max;
  r.spread_ok = r.xi1_over_xin1 >= thresholds.spread_ratio_min;
  r.top_ok = r.xin1 <= thresholds.top_level_max;
  r.all_ok = r.alpha_ok && r.spread_ok && r.top_ok;
  return r;
}

Instance instance_from_json_text(const std::string &text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    fail(ErrorCode::format, std::string("instance file is not valid JSON: ") +
                                e.what());
  }
  if (!j.is_object())
    fail(ErrorCode::format, "instance file must hold a JSON object");
  for (auto &key : {"xi", "t_overlap"}) {
    if (!j.contains(key))
      fail(ErrorCode::format, std::string("missing field \"") + key + "\"");
    if (!j[key].is_array())
      fail(ErrorCode::format, std::string("field \"") + key +
                                  "\" must be an array of numbers");
  }
  auto read_array = [&](const char *key) {
    std::vector<double> v;
    v.reserve(j[key].size());
    for (std::size_t i = 0; i < j[key].size(); ++i) {
      const auto &e = j[key][i];
      if (!e.is_number())
        fail(ErrorCode::format, std::string(key) + "[" + std::to_string(i) +
                                    "] is not a number");
      v.push_back(e.get<double>());
    }
    return v;
  };
  std::vector<double> xi = read_array("xi");
  std::vector<double> t = read_array("t_overlap");
  bool reversed = false;
  if (j.contains("reversed")) {
    if (!j["reversed"].is_boolean())
      fail(ErrorCode::format, "field \"reversed\" must be a boolean");
    reversed = j["reversed"].get<bool>();
  }
  return make_instance(std::move(xi), std::move(t), reversed);
}

std::string instance_to_json_text(const Instance &inst) {
  nlohmann::json j;
  j["xi"] = inst.xi;
  j["t_overlap"] = inst.t_overlap;
  if (inst.reversed)
    j["reversed"] = true;
  return j.dump(2) + "\n";
}

Instance load_instance(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    fail(ErrorCode::io, "cannot open instance file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return instance_from_json_text(buf.str());
  } catch (const Error &e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

void save_instance(const Instance &inst, const std::string &path) {
  std::ofstream out(path);
  if (!out)
    fail(ErrorCode::io, "cannot write instance file: " + path);
  out << instance_to_json_text(inst);
  if (!out)
    fail(ErrorCode::io, "write failed: " + path);
}

} // namespace projgap
