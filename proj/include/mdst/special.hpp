#pragma once

// Special functions and adaptive Gauss-Legendre quadrature.

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace mdst {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

namespace detail {

// Stirling correction log Gamma(x) - [(x - 1/2) log x - x + log(2 pi)/2],
// Bernoulli terms through B_16; accurate to double precision for x >= 15.
inline double stirling_tail(double x) noexcept {
  // B_2k / (2k (2k-1)), k = 1..8
  static constexpr std::array<double, 8> b = {1.0 / 12.0,    -1.0 / 360.0,       1.0 / 1260.0, -1.0 / 1680.0,
                                              1.0 / 1188.0,  -691.0 / 360360.0,  1.0 / 156.0,  -3617.0 / 122400.0};
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 0.0;
  for (int k = 7; k >= 0; --k) series = series * inv2 + b[static_cast<std::size_t>(k)];
  return series * inv;
}

}  // namespace detail

// log Gamma(x) for x > 0: shift the argument up to 15, then the Stirling
// series.  Reflection below 1/2.  Thread-safe, unlike std::lgamma which
// writes signgam.
inline double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be positive");
  if (x < 0.5) {
    // Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
  }
  double shift = 0.0;
  if (x < 15.0) {
    double prod = 1.0;
    while (x < 15.0) {
      prod *= x;
      x += 1.0;
    }
    shift = std::log(prod);
  }
  return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + detail::stirling_tail(x) - shift;
}

// log Gamma(x + d) - log Gamma(x) without the cancellation of two large logs.
inline double log_gamma_ratio(double x, double d) {
  if (!(x > 0.0 && x + d > 0.0)) throw std::domain_error("log_gamma_ratio: arguments must be positive");
  const double y = x + d;
  if (x < 15.0 || y < 15.0) return log_gamma(y) - log_gamma(x);
  return (x - 0.5) * std::log1p(d / x) + d * std::log(y) - d + detail::stirling_tail(y) - detail::stirling_tail(x);
}

inline double gamma_fn(double x) { return std::exp(log_gamma(x)); }

// log k! with an exact table for small k.
inline double log_factorial(long long k) {
  static const auto table = [] {
    std::array<double, 171> t{};
    double f = 1.0;
    t[0] = 0.0;
    for (int i = 1; i < 171; ++i) {
      f *= i;
      t[i] = std::log(f);
    }
    return t;
  }();
  if (k < 0) throw std::domain_error("log_factorial: negative argument");
  if (k < 171) return table[static_cast<std::size_t>(k)];
  return log_gamma(static_cast<double>(k) + 1.0);
}

// sum_{i=1}^k 1/i
inline double harmonic(long long k) {
  double s = 0.0;
  for (long long i = k; i >= 1; --i) s += 1.0 / static_cast<double>(i);
  return s;
}

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  int panels = 0;
};

namespace detail {

struct GaussLegendre15 {
  std::array<double, 15> nodes{};
  std::array<double, 15> weights{};

  GaussLegendre15() {
    constexpr int n = 15;
    for (int i = 0; i < n; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      nodes[i] = x;
      weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

inline const GaussLegendre15& gauss_legendre15() {
  static const GaussLegendre15 rule;
  return rule;
}

template <class F>
double gl15_panel(const F& f, double a, double b) {
  const auto& rule = gauss_legendre15();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double s = 0.0;
  for (int i = 0; i < 15; ++i) s += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return s * half;
}

template <class F>
void adapt(const F& f, double a, double b, double whole, double tol, int depth, QuadratureResult& out) {
  const double m = 0.5 * (a + b);
  const double left = gl15_panel(f, a, m);
  const double right = gl15_panel(f, m, b);
  const double err = std::abs(left + right - whole);
  if (err <= tol || depth >= 50) {
    out.value += left + right;
    out.abs_error += err;
    out.panels += 2;
    return;
  }
  adapt(f, a, m, left, 0.5 * tol, depth + 1, out);
  adapt(f, m, b, right, 0.5 * tol, depth + 1, out);
}

}  // namespace detail

// Adaptive composite 15-point Gauss-Legendre on [a,b] with interval bisection.
// The integrand is only evaluated at interior nodes, so integrable endpoint
// behaviour like u log u needs no special casing.
template <class F>
QuadratureResult integrate(const F& f, double a, double b, double abs_tol = 1e-13) {
  QuadratureResult out;
  const double whole = detail::gl15_panel(f, a, b);
  detail::adapt(f, a, b, whole, abs_tol, 0, out);
  return out;
}

// x log x with its continuous extension at 0.
inline double xlogx(double x) noexcept { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace mdst
