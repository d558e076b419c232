#pragma once

// Exact moments and limit constants for the directed linear tree, the
// minimal directed spanning forest and their fixed-point limit laws.

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdst/special.hpp"

namespace mdst::analytic {

namespace detail {

inline void require_alpha_above_one(double alpha, const char* what) {
  if (!(alpha > 1.0)) throw std::domain_error(std::string(what) + ": requires alpha > 1");
}

inline void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw std::domain_error(std::string(what) + ": argument must be positive");
}

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace detail

// P[Z_m <= t] = 1 - (1-t)^m on [0,1].
inline double zm_cdf(long long m, double t) {
  if (m < 1) throw std::domain_error("zm_cdf: m must be >= 1");
  if (t < 0.0) return 0.0;
  if (t > 1.0) return 1.0;
  return 1.0 - std::pow(1.0 - t, static_cast<double>(m));
}

// E[Z_m^beta] = m! Gamma(1+beta) / Gamma(1+beta+m).
inline double zm_moment(long long m, double beta) {
  if (m < 1) throw std::domain_error("zm_moment: m must be >= 1");
  detail::require_positive(beta, "zm_moment");
  const double md = static_cast<double>(m);
  return std::exp(log_gamma(1.0 + beta) - log_gamma_ratio(md + 1.0, beta));
}

// E[D^alpha] of the rooted tree on m uniforms.
inline double dlt_mean(long long m, double alpha) {
  if (m < 0) throw std::domain_error("dlt_mean: m must be >= 0");
  detail::require_positive(alpha, "dlt_mean");
  if (alpha == 1.0) {
    double s = 0.0;
    for (long long i = m; i >= 1; --i) s += 1.0 / static_cast<double>(i + 1);
    return s;
  }
  if (m == 0) return 0.0;
  const double md = static_cast<double>(m);
  const double tail = std::exp(log_gamma(1.0 + alpha) - log_gamma_ratio(md + 2.0, alpha - 1.0));
  return (1.0 - tail) / (alpha - 1.0);
}

// E[L_0^alpha] for the rooted tree on m uniforms: the i-th value is a lower
// record with gap X_i, contributing int_0^1 x^alpha (1-x)^(i-1) dx = B(alpha+1, i).
// For alpha = 1 this telescopes to m/(m+1).
inline double root_weight_mean(long long m, double alpha) {
  if (m < 0) throw std::domain_error("root_weight_mean: m must be >= 0");
  detail::require_positive(alpha, "root_weight_mean");
  if (alpha == 1.0) return static_cast<double>(m) / static_cast<double>(m + 1);
  double s = 0.0;
  const double lg = log_gamma(alpha + 1.0);
  for (long long i = m; i >= 1; --i) {
    const double id = static_cast<double>(i);
    s += std::exp(lg - log_gamma_ratio(id, alpha + 1.0));
  }
  return s;
}

// E[D^alpha] of the unrooted forest on m uniforms.
inline double dlf_mean(long long m, double alpha) { return dlt_mean(m, alpha) - root_weight_mean(m, alpha); }

// n^(alpha/2 - 1) L^alpha(X_n) -> (2/phi)^(alpha/2) Gamma(1 + alpha/2).
inline double lln_limit(double alpha, double phi) {
  if (!(alpha > 0.0 && alpha < 2.0)) throw std::domain_error("lln_limit: alpha must lie in (0,2)");
  if (!(phi == 2.0 * std::numbers::pi || (phi > 0.0 && phi <= std::numbers::pi)))
    throw std::domain_error("lln_limit: phi must lie in (0,pi] or equal 2*pi");
  return std::pow(2.0 / phi, alpha / 2.0) * gamma_fn(1.0 + alpha / 2.0);
}

// J(alpha) = int_0^1 u^alpha (1-u)^alpha du.
inline double j_alpha(double alpha) {
  detail::require_positive(alpha, "j_alpha");
  return std::exp(-(1.0 + 2.0 * alpha) * std::numbers::ln2 + 0.5 * std::log(std::numbers::pi) +
                  log_gamma(alpha + 1.0) - log_gamma(alpha + 1.5));
}

inline double d_alpha_mean(double alpha) {
  detail::require_alpha_above_one(alpha, "d_alpha_mean");
  return 1.0 / (alpha - 1.0);
}

inline double f_alpha_mean(double alpha) {
  detail::require_alpha_above_one(alpha, "f_alpha_mean");
  return 1.0 / (alpha * (alpha - 1.0));
}

inline double d_alpha_var(double alpha) {
  detail::require_alpha_above_one(alpha, "d_alpha_var");
  const double j = j_alpha(alpha);
  return alpha * (alpha - 2.0 + 2.0 * (2.0 * alpha + 1.0) * j) /
         ((alpha - 1.0) * (alpha - 1.0) * (2.0 * alpha - 1.0));
}

inline double f_alpha_var(double alpha) {
  detail::require_alpha_above_one(alpha, "f_alpha_var");
  const double j = j_alpha(alpha);
  return d_alpha_var(alpha) / (2.0 * alpha) +
         (alpha + 2.0 * (2.0 * alpha + 1.0) * j - 2.0) / (2.0 * alpha * alpha * (alpha - 1.0) * (alpha - 1.0));
}

// Var of the centred alpha = 1 limit, and its covariance with the unrooted limit.
inline double d1_variance() { return 2.0 - std::numbers::pi * std::numbers::pi / 6.0; }
inline double d1f1_covariance() { return 1.75 - std::numbers::pi * std::numbers::pi / 6.0; }

struct DickmanMoments {
  double mean;
  double second_moment;
};

// X = U^alpha (1 + X): generalized Dickman with parameter 1/alpha.
inline DickmanMoments dickman_moments(double alpha) {
  detail::require_positive(alpha, "dickman_moments");
  return {1.0 / alpha, (alpha + 2.0) / (2.0 * alpha * alpha)};
}

// Drift of the alpha = 1 fixed-point map: u log u + (1-u) log(1-u) + u.
inline double d1_drift(double u) noexcept { return xlogx(u) + xlogx(1.0 - u) + u; }

struct MomentRecursion {
  std::vector<double> moments;  // moments[k-1] = E[D~_1^k]
  double max_quadrature_error = 0.0;
};

// Moments of the centred alpha = 1 limit from its fixed-point equation
//   D = U D' + (1-U) D'' + f(U).
// Expanding E[D^k] by the multinomial theorem gives
//   m_k = sum_{i=0..k} C(k,i) sum_{j=0..i} C(i,j) E[f^{k-i} U^j (1-U)^{i-j}] m_j m_{i-j}
// with m_0 = 1; the two terms carrying m_k (i = k, j in {0,k}) are moved to
// the left, giving m_k (1 - 2/(k+1)) = remaining terms.  m_1 = 0.
inline MomentRecursion d1_moment_recursion(int k_max, double quad_tol = 1e-14) {
  if (k_max < 1) throw std::domain_error("d1_moment_recursion: k_max must be >= 1");
  std::vector<double> m(static_cast<std::size_t>(k_max) + 1, 0.0);
  m[0] = 1.0;
  MomentRecursion out;
  auto expect = [&](int p, int j, int l) {
    auto r = integrate(
        [&](double u) { return std::pow(d1_drift(u), p) * std::pow(u, j) * std::pow(1.0 - u, l); }, 0.0, 1.0,
        quad_tol);
    out.max_quadrature_error = std::max(out.max_quadrature_error, r.abs_error);
    return r.value;
  };
  for (int k = 2; k <= k_max; ++k) {
    double rest = 0.0;
    for (int i = 0; i <= k; ++i) {
      for (int j = 0; j <= i; ++j) {
        if (i == k && (j == 0 || j == k)) continue;
        const double mm = m[j] * m[i - j];
        if (mm == 0.0) continue;
        rest += detail::binomial(k, i) * detail::binomial(i, j) * expect(k - i, j, i - j) * mm;
      }
    }
    m[k] = rest / (1.0 - 2.0 / (k + 1.0));
  }
  out.moments.assign(m.begin() + 1, m.end());
  return out;
}

// Cov[Z_1^alpha, Z_2^alpha]; zero only at alpha = 1.
inline double cov_z1z2(double alpha) {
  detail::require_positive(alpha, "cov_z1z2");
  const double g2a3 = gamma_fn(2.0 * alpha + 3.0);
  const double ga2 = gamma_fn(alpha + 2.0);
  return ((alpha - 2.0) * g2a3 + 2.0 * (alpha + 2.0) * ga2 * ga2) /
         (2.0 * (alpha + 1.0) * (alpha + 1.0) * (alpha + 2.0) * g2a3);
}

// E[number of minimal points] of k uniform points under the componentwise order.
inline double expected_minimal(long long k) {
  if (k < 1) throw std::domain_error("expected_minimal: k must be >= 1");
  return harmonic(k);
}

// Asymptotic constant of E[D^alpha(U_m)]: the limit for alpha > 1, the offset
// from log m at alpha = 1, the coefficient of m^(1-alpha) for alpha < 1.
inline double dlf_mean_limit(double alpha) {
  detail::require_positive(alpha, "dlf_mean_limit");
  if (alpha > 1.0) return 1.0 / (alpha * (alpha - 1.0));
  if (alpha == 1.0) return kEulerGamma - 2.0;
  return gamma_fn(alpha + 1.0) / (1.0 - alpha);
}

// Same three regimes for the rooted tree.
inline double dlt_mean_limit(double alpha) {
  detail::require_positive(alpha, "dlt_mean_limit");
  if (alpha > 1.0) return 1.0 / (alpha - 1.0);
  if (alpha == 1.0) return kEulerGamma - 1.0;
  return gamma_fn(alpha + 1.0) / (1.0 - alpha);
}

struct MomentReport {
  std::string quantity;
  std::optional<double> alpha;
  std::optional<long long> m;
  std::optional<double> phi;
  std::optional<long long> k;
  double value = 0.0;
  std::string method = "closed_form";
  double err_estimate = 0.0;
};

// The standard table: every closed form at the parameter values used in
// the experiments, plus the quadrature-derived moments of the alpha = 1 limit.
inline std::vector<MomentReport> analytic_table(int recursion_depth = 4) {
  std::vector<MomentReport> t;
  auto closed = [&](std::string q, std::optional<double> a, std::optional<long long> m, std::optional<double> phi,
                    std::optional<long long> k, double v) {
    t.push_back(MomentReport{std::move(q), a, m, phi, k, v, "closed_form", 0.0});
  };
  constexpr double pi = std::numbers::pi;
  for (long long m : {1LL, 2LL, 10LL, 1000LL})
    for (double a : {0.5, 1.0, 2.0}) {
      closed("zm_moment", a, m, {}, {}, zm_moment(m, a));
      closed("dlt_mean", a, m, {}, {}, dlt_mean(m, a));
      closed("dlf_mean", a, m, {}, {}, dlf_mean(m, a));
    }
  for (double a : {0.5, 1.0, 1.5})
    for (double phi : {pi / 2, pi, 2 * pi}) closed("lln_limit", a, {}, phi, {}, lln_limit(a, phi));
  for (double a : {1.0, 1.5, 2.0, 3.0}) closed("j_alpha", a, {}, {}, {}, j_alpha(a));
  for (double a : {1.5, 2.0, 3.0}) {
    closed("d_alpha_mean", a, {}, {}, {}, d_alpha_mean(a));
    closed("d_alpha_var", a, {}, {}, {}, d_alpha_var(a));
    closed("f_alpha_mean", a, {}, {}, {}, f_alpha_mean(a));
    closed("f_alpha_var", a, {}, {}, {}, f_alpha_var(a));
  }
  closed("d1_variance", 1.0, {}, {}, {}, d1_variance());
  closed("d1f1_covariance", 1.0, {}, {}, {}, d1f1_covariance());
  for (double a : {0.5, 1.0, 2.0}) {
    const auto dm = dickman_moments(a);
    closed("dickman_mean", a, {}, {}, {}, dm.mean);
    closed("dickman_second_moment", a, {}, {}, {}, dm.second_moment);
    closed("cov_z1z2", a, {}, {}, {}, cov_z1z2(a));
    closed("dlf_mean_limit", a, {}, {}, {}, dlf_mean_limit(a));
  }
  for (long long k : {1LL, 3LL, 10LL}) closed("expected_minimal", {}, {}, {}, k, expected_minimal(k));
  const auto rec = d1_moment_recursion(recursion_depth);
  for (int k = 1; k <= recursion_depth; ++k)
    t.push_back(MomentReport{"d1_moment", 1.0, {}, {}, k, rec.moments[static_cast<std::size_t>(k - 1)], "quadrature",
                             rec.max_quadrature_error});
  return t;
}

}  // namespace mdst::analytic
