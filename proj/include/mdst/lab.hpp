#pragma once

// Replicated Monte Carlo experiments over the forest and tree models, with
// deterministic parallel fan-out and self-describing CSV output.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mdst/analytic.hpp"
#include "mdst/dlt.hpp"
#include "mdst/fixedpoint.hpp"
#include "mdst/forest.hpp"
#include "mdst/geometry.hpp"
#include "mdst/pointproc.hpp"
#include "mdst/random.hpp"
#include "mdst/stats.hpp"

namespace mdst::lab {

enum class ExperimentKind { lln, total_law, dlt_density, dickman, boundary, clt_region, coupling, analytic_table };
enum class Process { binomial, poisson };

inline std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::lln: return "lln";
    case ExperimentKind::total_law: return "total_law";
    case ExperimentKind::dlt_density: return "dlt_density";
    case ExperimentKind::dickman: return "dickman";
    case ExperimentKind::boundary: return "boundary";
    case ExperimentKind::clt_region: return "clt_region";
    case ExperimentKind::coupling: return "coupling";
    case ExperimentKind::analytic_table: return "analytic_table";
  }
  return "unknown";
}

inline std::string to_string(Process p) { return p == Process::poisson ? "poisson" : "binomial"; }

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::lln;
  std::size_t n = 10000;  // points (binomial) or intensity (poisson)
  std::size_t m = 1000;  // sequence length for the linear-tree experiments
  std::size_t reps = 100;
  double alpha = 1.0;
  double theta = std::numbers::pi / 2;
  double phi = std::numbers::pi / 2;
  bool rooted = false;
  Process process = Process::binomial;
  double sigma = 0.58;
  double epsilon = 0.03;
  std::uint64_t base_seed = 1;
  double kde_bandwidth = 0.0025;
  std::string output;
  unsigned jobs = 1;  // not part of the result: output is independent of it
};

// Largest admissible epsilon for the interior region at the given sigma/alpha.
inline double epsilon_bound(double sigma, double alpha) {
  double b = std::min({0.5, (1.0 - sigma) / 3.0, (3.0 - 4.0 * sigma) / 10.0, (2.0 - 3.0 * sigma) / 8.0});
  if (alpha < 1.0) b = std::min(b, (1.0 - alpha) / 2.0);
  return b;
}

inline void validate(const ExperimentConfig& c) {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (c.kind == ExperimentKind::analytic_table) return;
  if (c.reps < 2) fail("reps must be at least 2");
  if (!(c.alpha > 0.0) || !std::isfinite(c.alpha)) fail("alpha must be positive");
  if (!(c.sigma > 0.5 && c.sigma < 2.0 / 3.0)) fail("sigma must lie in (1/2, 2/3)");
  if (!(c.epsilon > 0.0 && c.epsilon < epsilon_bound(c.sigma, c.alpha)))
    fail("epsilon must lie in (0, " + std::to_string(epsilon_bound(c.sigma, c.alpha)) + ") for this sigma and alpha");
  if (!(c.kde_bandwidth > 0.0)) fail("bandwidth must be positive");
  try {
    ConeOrder(c.theta, c.phi);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  const bool needs_points = c.kind == ExperimentKind::lln || c.kind == ExperimentKind::total_law ||
                            c.kind == ExperimentKind::boundary || c.kind == ExperimentKind::clt_region ||
                            c.kind == ExperimentKind::coupling;
  if (needs_points && c.n < 2) fail("n must be at least 2");
  if ((c.kind == ExperimentKind::dlt_density || c.kind == ExperimentKind::dickman) && c.m < 1)
    fail("m must be at least 1");
  switch (c.kind) {
    case ExperimentKind::lln:
      if (!(c.alpha < 2.0)) fail("lln requires 0 < alpha < 2");
      break;
    case ExperimentKind::boundary:
      if (!(c.alpha >= 1.0)) fail("boundary requires alpha >= 1");
      break;
    default: break;
  }
  const bool componentwise_only = c.kind == ExperimentKind::total_law || c.kind == ExperimentKind::boundary ||
                                  c.kind == ExperimentKind::clt_region || c.kind == ExperimentKind::coupling;
  if (componentwise_only && !ConeOrder(c.theta, c.phi).is_componentwise())
    fail(to_string(c.kind) + " is defined for the componentwise order (theta = phi = pi/2) only");
}

inline nlohmann::ordered_json to_json(const ExperimentConfig& c) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(c.kind);
  j["n"] = c.n;
  j["m"] = c.m;
  j["reps"] = c.reps;
  j["alpha"] = c.alpha;
  j["theta"] = c.theta;
  j["phi"] = c.phi;
  j["rooted"] = c.rooted;
  j["process"] = to_string(c.process);
  j["sigma"] = c.sigma;
  j["epsilon"] = c.epsilon;
  j["base_seed"] = c.base_seed;
  j["kde_bandwidth"] = c.kde_bandwidth;
  return j;
}

struct Metric {
  std::string name;
  double value = 0.0;
  std::optional<double> std_err;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<double> samples;  // one value per replicate, by replicate index
  SummaryStats summary;
  std::optional<DensityEstimate> density;
  std::vector<Metric> metrics;
  std::vector<std::pair<std::string, std::vector<double>>> series;  // extra per-replicate columns

  std::optional<double> metric(const std::string& name) const {
    for (const auto& m : metrics)
      if (m.name == name) return m.value;
    return std::nullopt;
  }
  const std::vector<double>* find_series(const std::string& name) const {
    for (const auto& [k, v] : series)
      if (k == name) return &v;
    return nullptr;
  }
};

// Runs body(worker_state, r) for r in [0, reps) on `jobs` threads.  Each
// thread owns the state returned by make_state(); results are written by
// replicate index so the output does not depend on scheduling.
template <class T, class MakeState, class Body>
std::vector<T> parallel_replicates(std::size_t reps, unsigned jobs, MakeState make_state, Body body) {
  std::vector<T> out(reps);
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(reps, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    try {
      auto state = make_state();
      for (std::size_t r; !failed && (r = next.fetch_add(1)) < reps;) out[r] = body(state, r);
    } catch (...) {
      if (!failed.exchange(true)) error = std::current_exception();
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);
  return out;
}

template <class T, class Body>
std::vector<T> parallel_replicates(std::size_t reps, unsigned jobs, Body body) {
  struct None {};
  return parallel_replicates<T>(reps, jobs, [] { return None{}; },
                                [&](None&, std::size_t r) { return body(r); });
}

namespace detail {

inline SeedSpec replicate_seed(const ExperimentConfig& c, std::size_t r) {
  return SeedSpec{c.base_seed, static_cast<std::uint64_t>(r)};
}

inline PointSample draw_sample(const ExperimentConfig& c, const SeedSpec& seed) {
  PointSample s = c.process == Process::poisson ? poisson_process(static_cast<double>(c.n), seed)
                                                : binomial_process(c.n, seed);
  return c.rooted ? add_root(s) : s;
}

inline std::vector<double> centred(std::span<const double> xs, double centre) {
  std::vector<double> out(xs.begin(), xs.end());
  for (auto& x : out) x -= centre;
  return out;
}

inline double mean_of(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

// Keep only points whose nearest predecessors provably stay inside the
// region under the componentwise order (the region is a down-set).
inline std::vector<Point> restrict_points(const PointSample& s, std::span<const Rect> region) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < s.points.size(); ++i)
    if ((s.rooted && i == 0) || region_contains(region, s.points[i])) pts.push_back(s.points[i]);
  return pts;
}

inline void finish(ExperimentResult& res, std::vector<double> samples) {
  res.samples = std::move(samples);
  res.summary = summarize(res.samples);
}

inline void add_summary_metrics(ExperimentResult& res) {
  const auto& s = res.summary;
  res.metrics.push_back({"variance", s.variance, s.se_variance});
  res.metrics.push_back({"skewness", s.skewness, s.se_skewness});
  res.metrics.push_back({"excess_kurtosis", s.excess_kurtosis, s.se_kurtosis});
}

}  // namespace detail

// n^(alpha/2 - 1) L^alpha per replicate, under the configured cone order.
inline ExperimentResult run_lln(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.kind != ExperimentKind::lln) throw ConfigError("run_lln: wrong experiment kind");
  const ConeOrder order(cfg.theta, cfg.phi);
  const double scale = std::pow(static_cast<double>(cfg.n), cfg.alpha / 2.0 - 1.0);
  auto values = parallel_replicates<double>(cfg.reps, cfg.jobs, [&](std::size_t r) {
    const auto s = detail::draw_sample(cfg, detail::replicate_seed(cfg, r));
    return scale * total_weight(build_forest(s, order), cfg.alpha);
  });
  ExperimentResult res;
  res.config = cfg;
  detail::finish(res, std::move(values));
  const double target = analytic::lln_limit(cfg.alpha, order.phi());
  res.metrics.push_back({"mean", res.summary.mean, res.summary.se_mean});
  res.metrics.push_back({"target", target, std::nullopt});
  res.metrics.push_back({"relative_error", res.summary.mean / target - 1.0, std::nullopt});
  return res;
}

// Target variance of the boundary limit: two independent copies of the
// rooted (D~) or unrooted (F~) law; both coincide with D~_1 at alpha = 1.
inline std::optional<double> boundary_target_variance(double alpha, bool rooted) {
  if (alpha == 1.0) return 2.0 * analytic::d1_variance();
  if (alpha > 1.0) return 2.0 * (rooted ? analytic::d_alpha_var(alpha) : analytic::f_alpha_var(alpha));
  return std::nullopt;
}

// Whole-forest weight, centred by the batch mean; scaled by n^((alpha-1)/2) for alpha < 1.
inline ExperimentResult run_total_law(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.kind != ExperimentKind::total_law) throw ConfigError("run_total_law: wrong experiment kind");
  const ConeOrder order = ConeOrder::componentwise();
  const double scale = cfg.alpha < 1.0 ? std::pow(static_cast<double>(cfg.n), (cfg.alpha - 1.0) / 2.0) : 1.0;
  // rooted runs also record the unrooted weight of the same sample
  auto both = parallel_replicates<std::pair<double, double>>(cfg.reps, cfg.jobs, [&](std::size_t r) {
    const auto s = detail::draw_sample(cfg, detail::replicate_seed(cfg, r));
    const Forest f = build_forest(s, order);
    const double total = total_weight(f, cfg.alpha);
    return std::pair{scale * total, cfg.rooted ? scale * (total - root_weight(f, cfg.alpha)) : 0.0};
  });
  std::vector<double> raw, unrooted;
  for (const auto& [a, b] : both) {
    raw.push_back(a);
    unrooted.push_back(b);
  }
  ExperimentResult res;
  res.config = cfg;
  const double raw_mean = detail::mean_of(raw);
  detail::finish(res, detail::centred(raw, raw_mean));
  res.metrics.push_back({"raw_mean", raw_mean, res.summary.se_mean});
  detail::add_summary_metrics(res);
  if (cfg.rooted) {
    const auto cov = covariance(res.samples, unrooted);
    res.metrics.push_back({"unrooted_variance", summarize(unrooted).variance, summarize(unrooted).se_variance});
    res.metrics.push_back({"covariance_rooted_unrooted", cov.value, cov.std_err});
    res.series.emplace_back("unrooted_centred", detail::centred(unrooted, detail::mean_of(unrooted)));
  }
  if (cfg.alpha > 1.0) res.metrics.push_back({"target_variance", *boundary_target_variance(cfg.alpha, cfg.rooted), std::nullopt});
  res.density = kde(res.samples, cfg.kde_bandwidth);
  return res;
}

// Weight of edges starting in the L-shaped boundary strip, centred by the batch mean.
inline ExperimentResult run_boundary(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.kind != ExperimentKind::boundary) throw ConfigError("run_boundary: wrong experiment kind");
  const ConeOrder order = ConeOrder::componentwise();
  const auto regions = boundary_regions(static_cast<double>(cfg.n), cfg.sigma);
  const Region strip = regions.all();
  auto raw = parallel_replicates<double>(cfg.reps, cfg.jobs, [&](std::size_t r) {
    const auto s = detail::draw_sample(cfg, detail::replicate_seed(cfg, r));
    const auto pts = detail::restrict_points(s, strip);
    return restricted_weight(build_forest(pts, order, s.rooted), cfg.alpha, strip);
  });
  ExperimentResult res;
  res.config = cfg;
  const double raw_mean = detail::mean_of(raw);
  detail::finish(res, detail::centred(raw, raw_mean));
  res.metrics.push_back({"raw_mean", raw_mean, res.summary.se_mean});
  detail::add_summary_metrics(res);
  res.metrics.push_back({"target_variance", *boundary_target_variance(cfg.alpha, cfg.rooted), std::nullopt});
  res.metrics.push_back({"strip_width", regions.width, std::nullopt});
  return res;
}

struct CouplingDraw {
  double gap = 0.0;  // forest weight minus linear forest weight on the strip
  double bound = 0.0;  // alpha 2^(alpha-1) N n^-sigma
  std::size_t strip_points = 0;
};

// Forest on the points of the strip along the x-axis versus the linear
// forest on their x-coordinates taken in order of increasing y.
inline CouplingDraw coupling_draw(const PointSample& s, double n, double sigma, double alpha) {
  const double a = std::pow(n, -sigma);
  std::vector<Point> strip;
  for (std::size_t i = 0; i < s.points.size(); ++i)
    if (!(s.rooted && i == 0) && s.points[i].y <= a) strip.push_back(s.points[i]);
  std::sort(strip.begin(), strip.end(), [](const Point& p, const Point& q) { return p.y < q.y || (p.y == q.y && p.x < q.x); });
  CouplingDraw d;
  d.strip_points = strip.size();
  if (s.rooted) strip.insert(strip.begin(), Point{0.0, 0.0});
  std::vector<double> xs;
  xs.reserve(strip.size());
  for (const auto& p : strip) xs.push_back(p.x);
  const Forest f = build_forest(strip, ConeOrder::componentwise(), s.rooted);
  const LinearForest lf = build_dlf(xs, s.rooted);
  // sum both in vertex order so that termwise domination survives rounding
  std::vector<double> forest_w(strip.size(), 0.0), linear_w(strip.size(), 0.0);
  for (const auto& e : f.edges) forest_w[e.source] = weight_of(e.length, alpha);
  for (const auto& e : lf.edges) linear_w[e.inserted] = weight_of(e.gap, alpha);
  double lf_total = 0.0, f_total = 0.0;
  for (std::size_t i = 0; i < strip.size(); ++i) {
    f_total += forest_w[i];
    lf_total += linear_w[i];
  }
  d.gap = f_total - lf_total;
  d.bound = alpha * std::pow(2.0, alpha - 1.0) * static_cast<double>(d.strip_points) * a;
  return d;
}

inline ExperimentResult run_coupling(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.kind != ExperimentKind::coupling) throw ConfigError("run_coupling: wrong experiment kind");
  auto draws = parallel_replicates<CouplingDraw>(cfg.reps, cfg.jobs, [&](std::size_t r) {
    const auto s = detail::draw_sample(cfg, detail::replicate_seed(cfg, r));
    return coupling_draw(s, static_cast<double>(cfg.n), cfg.sigma, cfg.alpha);
  });
  ExperimentResult res;
  res.config = cfg;
  std::vector<double> gaps, bounds, counts;
  std::size_t negative = 0, above = 0;
  for (const auto& d : draws) {
    gaps.push_back(d.gap);
    bounds.push_back(d.bound);
    counts.push_back(static_cast<double>(d.strip_points));
    if (d.gap < 0.0) ++negative;
    if (cfg.alpha >= 1.0 && d.gap > d.bound) ++above;
  }
  detail::finish(res, std::move(gaps));
  res.series.emplace_back("bound", std::move(bounds));
  res.series.emplace_back("strip_points", std::move(counts));
  res.metrics.push_back({"mean_gap", res.summary.mean, res.summary.se_mean});
  res.metrics.push_back({"negative_gaps", static_cast<double>(negative), std::nullopt});
  res.metrics.push_back({"bound_violations", static_cast<double>(above), std::nullopt});
  res.metrics.push_back({"violations", static_cast<double>(negative + above), std::nullopt});
  return res;
}

// n^((alpha-1)/2) times the weight of edges starting in (n^(eps-1/2), 1]^2.
inline ExperimentResult run_clt_region(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.kind != ExperimentKind::clt_region) throw ConfigError("run_clt_region: wrong experiment kind");
  const double n = static_cast<double>(cfg.n);
  const Region interior = interior_region(n, cfg.epsilon);
  const double scale = std::pow(n, (cfg.alpha - 1.0) / 2.0);
  auto raw = parallel_replicates<double>(cfg.reps, cfg.jobs, [&](std::size_t r) {
    const auto s = detail::draw_sample(cfg, detail::replicate_seed(cfg, r));
    return scale * restricted_weight(build_forest(s, ConeOrder::componentwise()), cfg.alpha, interior);
  });
  ExperimentResult res;
  res.config = cfg;
  const double raw_mean = detail::mean_of(raw);
  detail::finish(res, detail::centred(raw, raw_mean));
  res.metrics.push_back({"raw_mean", raw_mean, res.summary.se_mean});
  detail::add_summary_metrics(res);
  res.metrics.push_back({cfg.process == Process::poisson ? "s2_estimate" : "t2_estimate", res.summary.variance,
                         res.summary.se_variance});
  return res;
}

// Variance of the centred alpha = 1 tree length on m uniforms:
// sum_{j<=m} j / ((j+1)^2 (j+2)), by orthogonality of the increments.
inline double centred_d1_variance_at(std::size_t m) {
  double s = 0.0;
  for (std::size_t j = m; j >= 1; --j) {
    const double jd = static_cast<double>(j);
    s += jd / ((jd + 1.0) * (jd + 1.0) * (jd + 2.0));
  }
  return s;
}

inline ExperimentResult run_dlt_density(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.kind != ExperimentKind::dlt_density) throw ConfigError("run_dlt_density: wrong experiment kind");
  auto pairs = parallel_replicates<CentredPair>(
      cfg.reps, cfg.jobs, [&] { return CentredD1Sampler(cfg.m); },
      [&](CentredD1Sampler& sampler, std::size_t r) { return sampler(detail::replicate_seed(cfg, r)); });
  ExperimentResult res;
  res.config = cfg;
  std::vector<double> d, f;
  d.reserve(pairs.size());
  f.reserve(pairs.size());
  for (const auto& p : pairs) {
    d.push_back(p.d_tilde);
    f.push_back(p.f_tilde);
  }
  detail::finish(res, std::move(d));
  const auto fs = summarize(f);
  const auto cov = covariance(res.samples, f);
  res.metrics.push_back({"mean", res.summary.mean, res.summary.se_mean});
  res.metrics.push_back({"variance", res.summary.variance, res.summary.se_variance});
  res.metrics.push_back({"third_central_moment", res.summary.central_m3, res.summary.se_m3});
  res.metrics.push_back({"skewness", res.summary.skewness, res.summary.se_skewness});
  res.metrics.push_back({"f_mean", fs.mean, fs.se_mean});
  res.metrics.push_back({"f_variance", fs.variance, fs.se_variance});
  res.metrics.push_back({"covariance_d_f", cov.value, cov.std_err});
  res.metrics.push_back({"finite_m_variance", centred_d1_variance_at(cfg.m), std::nullopt});
  res.metrics.push_back({"limit_variance", analytic::d1_variance(), std::nullopt});
  res.metrics.push_back({"limit_covariance", analytic::d1f1_covariance(), std::nullopt});
  res.series.emplace_back("f_tilde", detail::centred(f, 0.0));
  res.series.emplace_back("f_tilde_batch_centred", detail::centred(f, fs.mean));
  res.density = kde(res.samples, cfg.kde_bandwidth);
  return res;
}

// Generalized Dickman law two ways: root-edge weight of a long tree, and the series sampler.
inline ExperimentResult run_dickman(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.kind != ExperimentKind::dickman) throw ConfigError("run_dickman: wrong experiment kind");
  struct Pair {
    double series, tree;
  };
  auto draws = parallel_replicates<Pair>(cfg.reps, cfg.jobs, [&](std::size_t r) {
    const auto seed = detail::replicate_seed(cfg, r);
    const auto seq = uniform_sequence(cfg.m, substream(seed, 1), false);
    return Pair{sample_dickman(cfg.alpha, substream(seed, 2)), lower_record_series(seq.values, cfg.alpha)};
  });
  ExperimentResult res;
  res.config = cfg;
  std::vector<double> series, tree;
  for (const auto& p : draws) {
    series.push_back(p.series);
    tree.push_back(p.tree);
  }
  detail::finish(res, std::move(series));
  const auto ts = summarize(tree);
  const auto dm = analytic::dickman_moments(cfg.alpha);
  const double diff = res.summary.mean - ts.mean;
  const double diff_se = std::hypot(res.summary.se_mean, ts.se_mean);
  res.metrics.push_back({"series_mean", res.summary.mean, res.summary.se_mean});
  res.metrics.push_back({"series_variance", res.summary.variance, res.summary.se_variance});
  res.metrics.push_back({"tree_mean", ts.mean, ts.se_mean});
  res.metrics.push_back({"tree_variance", ts.variance, ts.se_variance});
  res.metrics.push_back({"mean_difference", diff, diff_se});
  res.metrics.push_back({"target_mean", dm.mean, std::nullopt});
  res.metrics.push_back({"target_variance", dm.second_moment - dm.mean * dm.mean, std::nullopt});
  res.series.emplace_back("tree_root_weight", std::move(tree));
  return res;
}

inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::lln: return run_lln(cfg);
    case ExperimentKind::total_law: return run_total_law(cfg);
    case ExperimentKind::boundary: return run_boundary(cfg);
    case ExperimentKind::coupling: return run_coupling(cfg);
    case ExperimentKind::clt_region: return run_clt_region(cfg);
    case ExperimentKind::dlt_density: return run_dlt_density(cfg);
    case ExperimentKind::dickman: return run_dickman(cfg);
    case ExperimentKind::analytic_table: break;
  }
  throw ConfigError("run_experiment: the analytic table is not a replicated experiment");
}

// ---------------------------------------------------------------------------
// Output

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string header_line(const ExperimentConfig& cfg) { return "#" + to_json(cfg).dump() + "\n"; }

inline void write_samples(std::ostream& os, const ExperimentConfig& cfg, std::span<const double> xs) {
  os << header_line(cfg) << "replicate,value\n";
  for (std::size_t r = 0; r < xs.size(); ++r) os << r << ',' << format_double(xs[r]) << '\n';
}

inline void write_summary(std::ostream& os, const ExperimentResult& res) {
  const auto& s = res.summary;
  os << header_line(res.config) << "stat,value,std_err\n";
  auto row = [&](const std::string& name, double v, std::optional<double> se) {
    os << name << ',' << format_double(v) << ',' << (se ? format_double(*se) : std::string()) << '\n';
  };
  row("count", static_cast<double>(s.count), std::nullopt);
  row("mean", s.mean, s.se_mean);
  row("variance", s.variance, s.se_variance);
  row("central_m3", s.central_m3, s.se_m3);
  row("central_m4", s.central_m4, std::nullopt);
  row("skewness", s.skewness, s.se_skewness);
  row("excess_kurtosis", s.excess_kurtosis, s.se_kurtosis);
  row("min", s.min, std::nullopt);
  row("max", s.max, std::nullopt);
  for (const auto& m : res.metrics) row(m.name, m.value, m.std_err);
}

inline void write_density(std::ostream& os, const ExperimentConfig& cfg, const DensityEstimate& d) {
  os << header_line(cfg) << "x,density\n";
  for (std::size_t i = 0; i < d.x.size(); ++i) os << format_double(d.x[i]) << ',' << format_double(d.density[i]) << '\n';
}

inline void write_analytic_table(std::ostream& os, std::span<const analytic::MomentReport> rows,
                                 const std::optional<ExperimentConfig>& cfg = std::nullopt) {
  if (cfg) os << header_line(*cfg);
  os << "quantity,alpha,m,phi,k,value,method,err_estimate\n";
  auto opt = [](const auto& v) -> std::string {
    if (!v) return "";
    if constexpr (std::is_floating_point_v<std::decay_t<decltype(*v)>>)
      return format_double(*v);
    else
      return std::to_string(*v);
  };
  for (const auto& r : rows)
    os << r.quantity << ',' << opt(r.alpha) << ',' << opt(r.m) << ',' << opt(r.phi) << ',' << opt(r.k) << ','
       << format_double(r.value) << ',' << r.method << ',' << format_double(r.err_estimate) << '\n';
}

inline void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  body(os);
  if (!os) throw std::runtime_error("write failed for " + path);
}

// Writes <path> (samples), <path>.summary.csv, <path>.density.csv when a
// density was estimated, and <path>.<name>.csv for each extra series.
inline std::vector<std::string> emit(const ExperimentResult& res, const std::string& path) {
  std::vector<std::string> written;
  write_file(path, [&](std::ostream& os) { write_samples(os, res.config, res.samples); });
  written.push_back(path);
  const std::string summary = path + ".summary.csv";
  write_file(summary, [&](std::ostream& os) { write_summary(os, res); });
  written.push_back(summary);
  if (res.density) {
    const std::string dens = path + ".density.csv";
    write_file(dens, [&](std::ostream& os) { write_density(os, res.config, *res.density); });
    written.push_back(dens);
  }
  for (const auto& [name, xs] : res.series) {
    const std::string p = path + "." + name + ".csv";
    write_file(p, [&](std::ostream& os) { write_samples(os, res.config, xs); });
    written.push_back(p);
  }
  return written;
}

struct SampleFile {
  nlohmann::json config;
  std::vector<double> values;
};

inline SampleFile read_samples(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path);
  SampleFile out;
  std::string line;
  std::getline(is, line);
  if (line.empty() || line[0] != '#') throw std::runtime_error(path + ": missing config header");
  out.config = nlohmann::json::parse(line.substr(1));
  std::getline(is, line);
  if (line != "replicate,value") throw std::runtime_error(path + ": unexpected column header");
  while (std::getline(is, line)) {
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error(path + ": malformed row");
    out.values.push_back(std::stod(line.substr(comma + 1)));
  }
  return out;
}

}  // namespace mdst::lab
