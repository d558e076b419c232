#pragma once

// Summary statistics with standard errors, and Gaussian kernel density estimates.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace mdst {

struct SummaryStats {
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double central_m3 = 0.0;
  double central_m4 = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double se_mean = 0.0;
  double se_variance = 0.0;
  double se_m3 = 0.0;
  double se_skewness = 0.0;
  double se_kurtosis = 0.0;
  double min = 0.0;
  double max = 0.0;
};

// Standard errors are large-sample (delta method) approximations.
inline SummaryStats summarize(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("summarize: empty sample");
  SummaryStats s;
  s.count = xs.size();
  const double n = static_cast<double>(xs.size());
  // two passes: mean first, then central sums
  double sum = 0.0;
  s.min = xs[0];
  s.max = xs[0];
  for (double x : xs) {
    sum += x;
    s.min = std::min(s.min, x);
    s.max = std::max(s.max, x);
  }
  s.mean = sum / n;
  double c2 = 0.0, c3 = 0.0, c4 = 0.0, c6 = 0.0;
  for (double x : xs) {
    const double d = x - s.mean;
    const double d2 = d * d;
    c2 += d2;
    c3 += d2 * d;
    c4 += d2 * d2;
    c6 += d2 * d2 * d2;
  }
  const double m2 = c2 / n;
  s.central_m3 = c3 / n;
  s.central_m4 = c4 / n;
  const double m6 = c6 / n;
  s.variance = xs.size() > 1 ? c2 / (n - 1.0) : 0.0;
  if (m2 > 0.0) {
    s.skewness = s.central_m3 / std::pow(m2, 1.5);
    s.excess_kurtosis = s.central_m4 / (m2 * m2) - 3.0;
  }
  s.se_mean = std::sqrt(s.variance / n);
  s.se_variance = std::sqrt(std::max(0.0, s.central_m4 - m2 * m2) / n);
  const double m3 = s.central_m3;
  s.se_m3 = std::sqrt(std::max(0.0, m6 - m3 * m3 - 6.0 * s.central_m4 * m2 + 9.0 * m2 * m2 * m2) / n);
  s.se_skewness = std::sqrt(6.0 * n * (n - 1.0) / std::max(1.0, (n - 2.0) * (n + 1.0) * (n + 3.0)));
  s.se_kurtosis = 2.0 * s.se_skewness * std::sqrt((n * n - 1.0) / std::max(1.0, (n - 3.0) * (n + 5.0)));
  return s;
}

struct Estimate {
  double value = 0.0;
  double std_err = 0.0;

  double z(double target = 0.0) const { return std_err > 0.0 ? (value - target) / std_err : 0.0; }
};

// Unbiased sample covariance; the standard error uses the empirical variance
// of the centred cross-products.
inline Estimate covariance(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("covariance: need two equal samples of size >= 2");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double c = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) c += (xs[i] - mx) * (ys[i] - my);
  const double cov_biased = c / n;
  double v = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double p = (xs[i] - mx) * (ys[i] - my) - cov_biased;
    v += p * p;
  }
  return {c / (n - 1.0), std::sqrt(v / (n - 1.0) / n)};
}

struct DensityEstimate {
  std::vector<double> x;
  std::vector<double> density;
  double bandwidth = 0.0;

  // Trapezoidal integral of the density over its grid.
  double integral() const {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (density[i] + density[i - 1]) * (x[i] - x[i - 1]);
    return s;
  }
};

// Gaussian-kernel density on `grid_points` equally spaced abscissae spanning
// [min - 4h, max + 4h].  Kernel mass beyond 8h is ignored (relative 1e-14).
inline DensityEstimate kde(std::span<const double> samples, double bandwidth, std::size_t grid_points = 1024) {
  if (samples.empty()) throw std::invalid_argument("kde: empty sample");
  if (!(bandwidth > 0.0)) throw std::invalid_argument("kde: bandwidth must be positive");
  if (grid_points < 2) throw std::invalid_argument("kde: need at least two grid points");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  DensityEstimate d;
  d.bandwidth = bandwidth;
  const double lo = sorted.front() - 4.0 * bandwidth;
  const double hi = sorted.back() + 4.0 * bandwidth;
  const double step = (hi - lo) / static_cast<double>(grid_points - 1);
  const double norm = 1.0 / (static_cast<double>(sorted.size()) * bandwidth * std::sqrt(2.0 * std::numbers::pi));
  const double reach = 8.0 * bandwidth;
  d.x.resize(grid_points);
  d.density.resize(grid_points);
  for (std::size_t g = 0; g < grid_points; ++g) {
    const double x = lo + step * static_cast<double>(g);
    const auto first = std::lower_bound(sorted.begin(), sorted.end(), x - reach);
    const auto last = std::upper_bound(first, sorted.end(), x + reach);
    double s = 0.0;
    for (auto it = first; it != last; ++it) {
      const double z = (x - *it) / bandwidth;
      s += std::exp(-0.5 * z * z);
    }
    d.x[g] = x;
    d.density[g] = s * norm;
  }
  return d;
}

}  // namespace mdst
