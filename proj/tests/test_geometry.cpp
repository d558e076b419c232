#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "mdst/geometry.hpp"
#include "mdst/random.hpp"

using namespace mdst;
constexpr double pi = std::numbers::pi;

TEST(Precedes, ComponentwiseExamples) {
  const auto star = ConeOrder::componentwise();
  EXPECT_TRUE(precedes(star, {0.2, 0.3}, {0.5, 0.9}));
  EXPECT_FALSE(precedes(star, {0.6, 0.3}, {0.5, 0.9}));
  EXPECT_TRUE(precedes(star, {0.5, 0.2}, {0.5, 0.9}));  // boundary ray
  EXPECT_TRUE(star.is_componentwise());
}

TEST(Precedes, FullPlaneAlwaysTrue) {
  const ConeOrder full(0.0, 2 * pi);
  Rng r({1, 0});
  for (int i = 0; i < 1000; ++i) {
    const Point y{r.uniform(), r.uniform()}, x{r.uniform(), r.uniform()};
    ASSERT_TRUE(precedes(full, y, x));
  }
}

TEST(Precedes, GeneralConeMatchesComponentwiseWhenEqual) {
  // (pi/2 + 1e-13, pi/2) takes the fast path; compare the trigonometric path a little off it
  const ConeOrder slanted(pi / 2 + 1e-9, pi / 2);
  EXPECT_FALSE(slanted.is_componentwise());
  Rng r({2, 0});
  int agree = 0;
  for (int i = 0; i < 10000; ++i) {
    const Point y{r.uniform(), r.uniform()}, x{r.uniform(), r.uniform()};
    agree += precedes(slanted, y, x) == precedes(ConeOrder::componentwise(), y, x);
  }
  EXPECT_EQ(agree, 10000);
}

TEST(Precedes, ConeDirections) {
  // theta = 0, phi = pi/2: between straight up and straight left
  const ConeOrder upleft(0.0, pi / 2);
  const Point o{0.5, 0.5};
  EXPECT_TRUE(precedes(upleft, {0.5, 0.9}, o));
  EXPECT_TRUE(precedes(upleft, {0.1, 0.5}, o));
  EXPECT_TRUE(precedes(upleft, {0.3, 0.7}, o));
  EXPECT_FALSE(precedes(upleft, {0.7, 0.7}, o));
  EXPECT_FALSE(precedes(upleft, {0.3, 0.3}, o));
  // lower half plane
  const ConeOrder below(pi / 2, pi);
  EXPECT_TRUE(precedes(below, {0.9, 0.1}, o));
  EXPECT_TRUE(precedes(below, {0.9, 0.5}, o));
  EXPECT_FALSE(precedes(below, {0.9, 0.6}, o));
}

TEST(ConeOrder, RejectsInvalidPhi) {
  EXPECT_THROW(ConeOrder(0.0, 0.0), std::invalid_argument);
  EXPECT_THROW(ConeOrder(0.0, 4.0), std::invalid_argument);
  EXPECT_THROW(ConeOrder(0.0, -1.0), std::invalid_argument);
  EXPECT_THROW(ConeOrder(NAN, 1.0), std::invalid_argument);
  EXPECT_NO_THROW(ConeOrder(0.0, pi));
  EXPECT_NO_THROW(ConeOrder(0.0, 2 * pi));
}

TEST(ConeOrder, ThetaNormalised) {
  EXPECT_NEAR(ConeOrder(-pi / 2, 1.0).theta(), 3 * pi / 2, 1e-15);
  EXPECT_NEAR(ConeOrder(5 * pi, 1.0).theta(), pi, 1e-12);
  EXPECT_TRUE(ConeOrder(pi / 2 + 2 * pi, pi / 2).is_componentwise());
}

class ConeProperties : public ::testing::TestWithParam<std::pair<double, double>> {};

TEST_P(ConeProperties, TransitiveAndAntisymmetric) {
  const auto [theta, phi] = GetParam();
  const ConeOrder order(theta, phi);
  Rng r({11, static_cast<std::uint64_t>(theta * 1000 + phi * 10)});
  int chains = 0;
  for (int i = 0; i < 200000; ++i) {
    const Point a{r.uniform(), r.uniform()}, b{r.uniform(), r.uniform()}, c{r.uniform(), r.uniform()};
    if (precedes(order, a, b) && precedes(order, b, c)) {
      ++chains;
      ASSERT_TRUE(precedes(order, a, c));
    }
    ASSERT_FALSE(precedes(order, a, b) && precedes(order, b, a));
  }
  EXPECT_GT(chains, 100);
}

INSTANTIATE_TEST_SUITE_P(Cones, ConeProperties,
                         ::testing::Values(std::pair{pi / 2, pi / 2}, std::pair{0.0, pi}, std::pair{1.0, 2.0},
                                           std::pair{4.0, 0.3}));

TEST(ConeOrder, TranslationInvarianceGeneral) {
  const ConeOrder order(1.0, 2.0);
  Rng r({12, 0});
  int mismatches = 0;
  for (int i = 0; i < 100000; ++i) {
    const Point a{r.uniform(), r.uniform()}, b{r.uniform(), r.uniform()};
    const Point t{r.uniform() - 0.5, r.uniform() - 0.5};
    mismatches += precedes(order, a, b) != precedes(order, {a.x + t.x, a.y + t.y}, {b.x + t.x, b.y + t.y});
  }
  // only rounding on the boundary rays can differ
  EXPECT_LE(mismatches, 2);
}

TEST(ConeOrder, BoxTestIsConservative) {
  Rng r({13, 0});
  for (const auto& [th, ph] : {std::pair{0.0, pi}, std::pair{1.0, 2.0}, std::pair{4.0, 0.3}, std::pair{pi / 2, pi / 2}}) {
    const ConeOrder order(th, ph);
    for (int i = 0; i < 20000; ++i) {
      const Point x{r.uniform(), r.uniform()};
      const double x0 = r.uniform() * 0.9, y0 = r.uniform() * 0.9;
      const double x1 = x0 + 0.1, y1 = y0 + 0.1;
      if (order.may_intersect_box(x, x0, x1, y0, y1)) continue;
      for (int k = 0; k < 20; ++k) {
        const Point p{x0 + (x1 - x0) * r.uniform(), y0 + (y1 - y0) * r.uniform()};
        if (p == x) continue;
        ASSERT_FALSE(order.precedes(p, x)) << th << " " << ph;
      }
    }
  }
}

TEST(PowerWeight, Examples) {
  EXPECT_DOUBLE_EQ(power_weight({0, 0}, {0.6, 0.8}, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(power_weight({0, 0}, {1, 1}, 2.0), 2.0);
  EXPECT_EQ(power_weight({0.3, 0.3}, {0.3, 0.3}, 0.7), 0.0);
  EXPECT_THROW(power_weight({0, 0}, {1, 1}, 0.0), std::invalid_argument);
  Rng r({14, 0});
  for (int i = 0; i < 1000; ++i) {
    const Point a{r.uniform(), r.uniform()}, b{r.uniform(), r.uniform()};
    const double al = 0.1 + 3.0 * r.uniform();
    ASSERT_EQ(power_weight(a, b, al), power_weight(b, a, al));
  }
}

TEST(Regions, HalfOpenMembership) {
  const Rect r{0.0, 0.5, 0.0, 0.5};
  EXPECT_TRUE(r.contains({0.5, 0.5}));
  EXPECT_FALSE(r.contains({0.0, 0.3}));
  EXPECT_FALSE(r.contains({0.3, 0.0}));
  EXPECT_THROW(Rect(0.5, 0.5, 0.0, 1.0), std::invalid_argument);
  const Region sq = unit_square();
  EXPECT_TRUE(region_contains(sq, {1.0, 1.0}));
  EXPECT_FALSE(region_contains(sq, {0.0, 0.0}));
}

TEST(Regions, BoundaryPartition) {
  const auto b = boundary_regions(1e4, 0.58);
  EXPECT_NEAR(b.width, std::pow(1e4, -0.58), 1e-15);
  const Region all = b.all();
  const Region inner{Rect{b.width, 1.0, b.width, 1.0}};
  Rng r({15, 0});
  for (int i = 0; i < 100000; ++i) {
    const Point p{r.uniform(), r.uniform()};
    int hits = 0;
    for (const auto& rect : all) hits += rect.contains(p);
    ASSERT_EQ(hits + region_contains(inner, p), 1);
  }
  const auto s0 = interior_region(1e4, 0.03);
  EXPECT_NEAR(s0[0].x_lo, std::pow(1e4, 0.03 - 0.5), 1e-15);
}
