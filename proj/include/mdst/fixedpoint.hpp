#pragma once

// Direct samplers for the limit laws of the directed linear tree, and the
// one-step fixed-point maps those laws are invariant under.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mdst/analytic.hpp"
#include "mdst/dlt.hpp"
#include "mdst/geometry.hpp"
#include "mdst/random.hpp"
#include "mdst/special.hpp"

namespace mdst {

// A subtree whose multiplicative coefficient drops below coefficient_floor,
// or that sits max_depth levels down, is replaced by its exact mean.
struct TruncationPolicy {
  double coefficient_floor = 1e-10;
  int max_depth = 60;
};

namespace detail {

inline void check_policy(const TruncationPolicy& p) {
  if (!(p.coefficient_floor > 0.0)) throw std::invalid_argument("TruncationPolicy: floor must be positive");
  if (p.max_depth < 1 || p.max_depth > 61) throw std::invalid_argument("TruncationPolicy: max_depth must lie in [1,61]");
}

inline void require_alpha_above_one(double alpha, const char* what) {
  if (!(alpha > 1.0)) throw std::domain_error(std::string(what) + ": requires alpha > 1");
}

// Sum over the recursive tree of D = U^a D' + (1-U)^a D'' + U^a, scaled by c0.
// Node uniforms are a pure function of (key, heap index), so two policies
// evaluated on the same key agree on every node both of them expand.
inline double expand_d_tree(std::uint64_t key, double alpha, double c0, const TruncationPolicy& policy,
                            double d_mean) {
  struct Node {
    std::uint64_t id;
    double coef;
    int depth;
  };
  if (c0 < policy.coefficient_floor) return c0 * d_mean;
  double total = 0.0;
  std::vector<Node> stack;
  stack.reserve(2 * static_cast<std::size_t>(policy.max_depth) + 2);
  stack.push_back({1, c0, 0});
  while (!stack.empty()) {
    const Node nd = stack.back();
    stack.pop_back();
    const double u = hashed_unit(key, nd.id);
    const double left = nd.coef * weight_of(u, alpha);
    const double right = nd.coef * weight_of(1.0 - u, alpha);
    total += left;
    const bool at_depth = nd.depth + 1 >= policy.max_depth;
    if (at_depth || left < policy.coefficient_floor)
      total += left * d_mean;
    else
      stack.push_back({2 * nd.id, left, nd.depth + 1});
    if (at_depth || right < policy.coefficient_floor)
      total += right * d_mean;
    else
      stack.push_back({2 * nd.id + 1, right, nd.depth + 1});
  }
  return total;
}

}  // namespace detail

// One draw of U_1^a + (U_1 U_2)^a + ..., stopped once the running term < 1e-12.
inline double sample_dickman(double alpha, const SeedSpec& seed) {
  if (!(alpha > 0.0)) throw std::domain_error("sample_dickman: alpha must be positive");
  Rng rng(seed);
  double prod = 1.0;
  double x = 0.0;
  for (;;) {
    prod *= rng.uniform();
    const double term = weight_of(prod, alpha);
    x += term;
    if (term < 1e-12) break;
  }
  return x;
}

// D = U^a D' + (1-U)^a D'' + U^a, a > 1.
inline double sample_D(double alpha, const SeedSpec& seed, const TruncationPolicy& policy = {}) {
  detail::require_alpha_above_one(alpha, "sample_D");
  detail::check_policy(policy);
  return detail::expand_d_tree(stream_key(seed), alpha, 1.0, policy, analytic::d_alpha_mean(alpha));
}

// F = U^a F' + (1-U)^a D, a > 1, unrolled along the F-chain.
inline double sample_F(double alpha, const SeedSpec& seed, const TruncationPolicy& policy = {}) {
  detail::require_alpha_above_one(alpha, "sample_F");
  detail::check_policy(policy);
  const std::uint64_t key = stream_key(seed);
  const double d_mean = analytic::d_alpha_mean(alpha);
  const double f_mean = analytic::f_alpha_mean(alpha);
  double coef = 1.0;
  double total = 0.0;
  for (int step = 0;; ++step) {
    if (coef < policy.coefficient_floor || step >= policy.max_depth) {
      total += coef * f_mean;
      break;
    }
    const double u = hashed_unit(key, static_cast<std::uint64_t>(step));
    const std::uint64_t d_key = mix64(key ^ mix64(0xD000000000000000ULL + static_cast<std::uint64_t>(step)));
    total += detail::expand_d_tree(d_key, alpha, coef * weight_of(1.0 - u, alpha), policy, d_mean);
    coef *= weight_of(u, alpha);
  }
  return total;
}

struct CentredPair {
  double d_tilde;  // rooted tree length minus its exact mean
  double f_tilde;  // unrooted forest length minus its exact mean
};

// Draws of the centred alpha = 1 tree and forest lengths on m uniforms,
// coupled through one sequence.  Keeps its scratch buffers across calls.
class CentredD1Sampler {
 public:
  explicit CentredD1Sampler(std::size_t m)
      : m_(m),
        rooted_mean_(analytic::dlt_mean(static_cast<long long>(m), 1.0)),
        unrooted_mean_(analytic::dlf_mean(static_cast<long long>(m), 1.0)) {
    if (m < 1) throw std::invalid_argument("CentredD1Sampler: m must be >= 1");
  }

  CentredPair operator()(const SeedSpec& seed) {
    Rng rng(seed);
    values_.resize(m_ + 1);
    values_[0] = 0.0;
    for (std::size_t i = 1; i <= m_; ++i) values_[i] = rng.uniform();
    left_parents(values_, ws_);
    double total = 0.0;
    double to_root = 0.0;
    for (std::size_t i = 1; i <= m_; ++i) {
      const auto p = ws_.parent[i];
      const double gap = values_[i] - values_[p];
      total += gap;
      if (p == 0) to_root += gap;
    }
    return {total - rooted_mean_, (total - to_root) - unrooted_mean_};
  }

  std::size_t m() const noexcept { return m_; }
  double rooted_mean() const noexcept { return rooted_mean_; }
  double unrooted_mean() const noexcept { return unrooted_mean_; }

 private:
  std::size_t m_;
  double rooted_mean_;
  double unrooted_mean_;
  std::vector<double> values_;
  DlfWorkspace ws_;
};

inline CentredPair sample_D1_centred(std::size_t m, const SeedSpec& seed) {
  CentredD1Sampler s(m);
  return s(seed);
}

// x -> u x1 + (1-u) x2 + u log u + (1-u) log(1-u) + u
inline double apply_d1_map(double x1, double x2, double u) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("apply_d1_map: u must lie in (0,1)");
  return u * x1 + (1.0 - u) * x2 + analytic::d1_drift(u);
}

inline double d_alpha_drift(double u, double alpha) {
  detail::require_alpha_above_one(alpha, "d_alpha_drift");
  const double a1 = alpha - 1.0;
  return alpha / a1 * std::pow(u, alpha) + std::pow(1.0 - u, alpha) / a1 - 1.0 / a1;
}

inline double f_alpha_drift(double u, double alpha) {
  detail::require_alpha_above_one(alpha, "f_alpha_drift");
  const double a1 = alpha - 1.0;
  return std::pow(u, alpha) / (alpha * a1) + std::pow(1.0 - u, alpha) / a1 - 1.0 / (alpha * a1);
}

// Centred map for D~_alpha.
inline double apply_d_alpha_map(double x1, double x2, double u, double alpha) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("apply_d_alpha_map: u must lie in (0,1)");
  return std::pow(u, alpha) * x1 + std::pow(1.0 - u, alpha) * x2 + d_alpha_drift(u, alpha);
}

// Centred map for F~_alpha; xd is an independent D~_alpha draw.
inline double apply_f_alpha_map(double xf, double xd, double u, double alpha) {
  if (!(u > 0.0 && u < 1.0)) throw std::domain_error("apply_f_alpha_map: u must lie in (0,1)");
  return std::pow(u, alpha) * xf + std::pow(1.0 - u, alpha) * xd + f_alpha_drift(u, alpha);
}

}  // namespace mdst
