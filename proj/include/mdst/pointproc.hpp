#pragma once

// Binomial and Poisson point processes on (0,1]^2 and uniform sequences on (0,1].

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mdst/geometry.hpp"
#include "mdst/random.hpp"
#include "mdst/special.hpp"

namespace mdst {

struct PointSample {
  std::vector<Point> points;
  bool rooted = false;
  double intensity_or_count = 0.0;

  std::size_t size() const noexcept { return points.size(); }
};

struct UniformSequence {
  std::vector<double> values;
  bool rooted = false;

  std::size_t size() const noexcept { return values.size(); }
};

// Exact Poisson(mean) variate.  Sequential-search inversion below 30,
// Hormann's transformed rejection (PTRS) above.
template <class Gen>
std::uint64_t sample_poisson(double mean, Gen& rng) {
  if (!(mean > 0.0) || !std::isfinite(mean)) throw std::invalid_argument("sample_poisson: mean must be positive");
  if (mean < 30.0) {
    for (;;) {
      double p = std::exp(-mean);
      double u = rng.uniform_co();
      std::uint64_t k = 0;
      while (u > p) {
        u -= p;
        ++k;
        p *= mean / static_cast<double>(k);
        if (p <= 0.0) break;  // rounding left mass unclaimed; redraw
      }
      if (u <= p) return k;
    }
  }
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform_co() - 0.5;
    const double v = rng.uniform_co();
    const double us = 0.5 - std::abs(u);
    const double kd = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(kd);
    if (kd < 0.0 || (us < 0.013 && v > us)) continue;
    const long long k = static_cast<long long>(kd);
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -mean + static_cast<double>(k) * loglam - log_factorial(k))
      return static_cast<std::uint64_t>(k);
  }
}

namespace detail {
inline void fill_uniform_points(std::vector<Point>& pts, std::size_t n, Rng& rng) {
  pts.reserve(pts.size() + n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng.uniform();
    const double y = rng.uniform();
    pts.push_back({x, y});
  }
}
}  // namespace detail

inline PointSample binomial_process(std::size_t n, const SeedSpec& seed) {
  Rng rng(seed);
  PointSample s;
  s.intensity_or_count = static_cast<double>(n);
  detail::fill_uniform_points(s.points, n, rng);
  return s;
}

inline PointSample poisson_process(double intensity, const SeedSpec& seed) {
  if (!(intensity > 0.0)) throw std::invalid_argument("poisson_process: intensity must be positive");
  Rng rng(seed);
  const auto n = static_cast<std::size_t>(sample_poisson(intensity, rng));
  PointSample s;
  s.intensity_or_count = intensity;
  detail::fill_uniform_points(s.points, n, rng);
  return s;
}

inline PointSample add_root(const PointSample& s) {
  if (s.rooted) throw std::invalid_argument("add_root: sample is already rooted");
  PointSample r;
  r.rooted = true;
  r.intensity_or_count = s.intensity_or_count;
  r.points.reserve(s.points.size() + 1);
  r.points.push_back({0.0, 0.0});
  r.points.insert(r.points.end(), s.points.begin(), s.points.end());
  return r;
}

inline UniformSequence uniform_sequence(std::size_t m, const SeedSpec& seed, bool rooted) {
  Rng rng(seed);
  UniformSequence s;
  s.rooted = rooted;
  s.values.reserve(m + (rooted ? 1 : 0));
  if (rooted) s.values.push_back(0.0);
  for (std::size_t i = 0; i < m; ++i) s.values.push_back(rng.uniform());
  return s;
}

}  // namespace mdst
