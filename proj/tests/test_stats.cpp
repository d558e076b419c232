#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "mdst/random.hpp"
#include "mdst/stats.hpp"

using namespace mdst;

TEST(Summarize, Constant) {
  const std::vector<double> c{2.5, 2.5, 2.5};
  const auto s = summarize(c);
  EXPECT_EQ(s.count, 3u);
  EXPECT_EQ(s.mean, 2.5);
  EXPECT_EQ(s.variance, 0.0);
  EXPECT_EQ(s.skewness, 0.0);
  EXPECT_EQ(s.min, 2.5);
  EXPECT_EQ(s.max, 2.5);
  EXPECT_THROW(summarize(std::vector<double>{}), std::invalid_argument);
}

TEST(Summarize, KnownValues) {
  const std::vector<double> v{1, 2, 3, 4, 10};
  const auto s = summarize(v);
  EXPECT_DOUBLE_EQ(s.mean, 4.0);
  EXPECT_DOUBLE_EQ(s.variance, (9 + 4 + 1 + 0 + 36) / 4.0);
  EXPECT_DOUBLE_EQ(s.central_m3, (-27 - 8 - 1 + 0 + 216) / 5.0);
  EXPECT_DOUBLE_EQ(s.central_m4, (81 + 16 + 1 + 0 + 1296) / 5.0);
  EXPECT_DOUBLE_EQ(s.min, 1.0);
  EXPECT_DOUBLE_EQ(s.max, 10.0);
  EXPECT_GT(s.skewness, 0.0);
  EXPECT_GE(s.variance, 0.0);
}

TEST(Summarize, StandardErrorsAreCalibrated) {
  // exponential(1): variance 1, mu3 = 2, skewness 2
  Rng rng({61, 0});
  std::vector<double> v;
  for (int i = 0; i < 400000; ++i) v.push_back(-std::log(rng.uniform()));
  const auto s = summarize(v);
  EXPECT_NEAR(s.mean, 1.0, 4.0 * s.se_mean);
  EXPECT_NEAR(s.variance, 1.0, 4.0 * s.se_variance);
  EXPECT_NEAR(s.central_m3, 2.0, 4.0 * s.se_m3);
  EXPECT_NEAR(s.skewness, 2.0, 0.1);
  EXPECT_NEAR(s.excess_kurtosis, 6.0, 1.0);
}

TEST(Covariance, Values) {
  const std::vector<double> x{1, 2, 3, 4}, y{2, 4, 6, 8};
  EXPECT_DOUBLE_EQ(covariance(x, y).value, 2.0 * 5.0 / 3.0);
  EXPECT_THROW(covariance(x, std::vector<double>{1.0}), std::invalid_argument);
  Rng rng({62, 0});
  std::vector<double> a, b;
  for (int i = 0; i < 100000; ++i) {
    a.push_back(rng.uniform());
    b.push_back(rng.uniform());
  }
  const auto c = covariance(a, b);
  EXPECT_LT(std::abs(c.z()), 4.0);
  EXPECT_NEAR(c.std_err, 1.0 / 12.0 / std::sqrt(100000.0), 1e-5);
}

TEST(Kde, IntegratesToOneAndMatchesNormal) {
  Rng rng({63, 0});
  std::vector<double> v;
  for (int i = 0; i < 100000; ++i) {
    // Box-Muller
    const double u1 = rng.uniform(), u2 = rng.uniform();
    v.push_back(std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2));
  }
  const auto d = kde(v, 0.05);
  ASSERT_EQ(d.x.size(), 1024u);
  EXPECT_NEAR(d.integral(), 1.0, 0.01);
  const auto s = summarize(v);
  EXPECT_NEAR(d.x.front(), s.min - 0.2, 1e-12);
  EXPECT_NEAR(d.x.back(), s.max + 0.2, 1e-12);
  // density at the grid point nearest 0
  std::size_t best = 0;
  for (std::size_t i = 0; i < d.x.size(); ++i)
    if (std::abs(d.x[i]) < std::abs(d.x[best])) best = i;
  EXPECT_NEAR(d.density[best], 1.0 / std::sqrt(2.0 * std::numbers::pi), 0.01);
}

TEST(Kde, Errors) {
  EXPECT_THROW(kde(std::vector<double>{}, 0.1), std::invalid_argument);
  EXPECT_THROW(kde(std::vector<double>{1.0}, 0.0), std::invalid_argument);
  const auto d = kde(std::vector<double>{1.0}, 0.1);
  EXPECT_NEAR(d.integral(), 1.0, 0.01);
}
