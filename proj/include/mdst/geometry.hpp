#pragma once

// Cone partial orders on the plane and power-weighted edge lengths.

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mdst {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double squared_distance(const Point& a, const Point& b) noexcept {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(const Point& a, const Point& b) noexcept {
  return std::sqrt(squared_distance(a, b));
}

// length^alpha with exact fast paths for the two exponents used most.
inline double weight_of(double length, double alpha) noexcept {
  if (alpha == 1.0) return length;
  if (alpha == 2.0) return length * length;
  return std::pow(length, alpha);
}

inline double power_weight(const Point& x, const Point& y, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("power_weight: alpha must be positive");
  return weight_of(distance(x, y), alpha);
}

// The order y <= x  iff  y lies in the closed cone with vertex x bounded by the
// rays at angles theta and theta + phi, measured anticlockwise from (0, +1).
class ConeOrder {
 public:
  static constexpr double kTwoPi = 2.0 * std::numbers::pi;

  ConeOrder(double theta, double phi) : phi_(phi) {
    if (!std::isfinite(theta) || !std::isfinite(phi))
      throw std::invalid_argument("ConeOrder: angles must be finite");
    if (!(phi == kTwoPi || (phi > 0.0 && phi <= std::numbers::pi)))
      throw std::invalid_argument("ConeOrder: phi must lie in (0, pi] or equal 2*pi");
    theta_ = std::fmod(theta, kTwoPi);
    if (theta_ < 0.0) theta_ += kTwoPi;
    if (theta_ >= kTwoPi) theta_ = 0.0;
    componentwise_ = std::abs(theta_ - std::numbers::pi / 2) <= 1e-12 &&
                     std::abs(phi_ - std::numbers::pi / 2) <= 1e-12;
    full_ = phi_ == kTwoPi;
    if (!full_) {
      ray_lo_ = {-std::sin(theta_), std::cos(theta_)};
      ray_hi_ = {-std::sin(theta_ + phi_), std::cos(theta_ + phi_)};
    }
  }

  // The south-west quadrant order: componentwise <=.
  static ConeOrder componentwise() { return {std::numbers::pi / 2, std::numbers::pi / 2}; }
  static ConeOrder full_plane() { return {0.0, kTwoPi}; }

  double theta() const noexcept { return theta_; }
  double phi() const noexcept { return phi_; }
  bool is_componentwise() const noexcept { return componentwise_; }
  bool is_full() const noexcept { return full_; }

  // Caller guarantees y != x.
  bool precedes(const Point& y, const Point& x) const noexcept {
    if (componentwise_) return y.x <= x.x && y.y <= x.y;
    if (full_) return true;
    const double dx = y.x - x.x;
    const double dy = y.y - x.y;
    double angle = std::atan2(-dx, dy);
    if (angle < 0.0) angle += kTwoPi;
    double rel = angle - theta_;
    if (rel < 0.0) rel += kTwoPi;
    return rel <= phi_;
  }

  // Conservative test: false only if no point of the box can precede x.
  bool may_intersect_box(const Point& x, double x_lo, double x_hi, double y_lo, double y_hi) const noexcept {
    if (full_) return true;
    if (componentwise_) return x_lo <= x.x && y_lo <= x.y;
    const double corners[4][2] = {{x_lo - x.x, y_lo - x.y}, {x_hi - x.x, y_lo - x.y},
                                  {x_lo - x.x, y_hi - x.y}, {x_hi - x.x, y_hi - x.y}};
    // cone (phi <= pi) = {cross(r1, d) >= 0} intersected with {cross(d, r2) >= 0}
    auto all_outside = [&](const Point& ray, double sign) {
      constexpr double slack = 1e-12;
      for (const auto& c : corners) {
        const double cross = ray.x * c[1] - ray.y * c[0];
        if (sign * cross >= -slack) return false;
      }
      return true;
    };
    if (all_outside(ray_lo_, 1.0)) return false;
    if (phi_ < std::numbers::pi && all_outside(ray_hi_, -1.0)) return false;
    return true;
  }

 private:
  double theta_ = 0.0;
  double phi_ = 0.0;
  bool componentwise_ = false;
  bool full_ = false;
  Point ray_lo_{};  // direction of the ray at theta
  Point ray_hi_{};  // direction of the ray at theta + phi
};

inline bool precedes(const ConeOrder& order, const Point& y, const Point& x) noexcept {
  return order.precedes(y, x);
}

// Half-open box (x_lo, x_hi] x (y_lo, y_hi].
struct Rect {
  double x_lo, x_hi, y_lo, y_hi;

  Rect(double xl, double xh, double yl, double yh) : x_lo(xl), x_hi(xh), y_lo(yl), y_hi(yh) {
    if (!(xl < xh) || !(yl < yh)) throw std::invalid_argument("Rect: empty extent");
  }

  bool contains(const Point& p) const noexcept {
    return p.x > x_lo && p.x <= x_hi && p.y > y_lo && p.y <= y_hi;
  }
};

// A union of rectangles; membership is the union of the half-open boxes.
using Region = std::vector<Rect>;

inline bool region_contains(std::span<const Rect> region, const Point& p) noexcept {
  for (const auto& r : region)
    if (r.contains(p)) return true;
  return false;
}

inline Region unit_square() { return {Rect{0.0, 1.0, 0.0, 1.0}}; }

// The L-shaped strip (0,1]^2 \ (a,1]^2 with a = n^-sigma, split into the
// corner square, the strip along the x-axis and the strip along the y-axis.
struct BoundaryRegions {
  double width;
  Rect corner;  // (0,a]^2
  Rect along_x;  // (a,1] x (0,a]
  Rect along_y;  // (0,a] x (a,1]

  Region all() const { return {corner, along_x, along_y}; }
  Region x_side() const { return {corner, along_x}; }
  Region y_side() const { return {corner, along_y}; }
};

inline BoundaryRegions boundary_regions(double n, double sigma) {
  const double a = std::pow(n, -sigma);
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("boundary_regions: n^-sigma must lie in (0,1)");
  return {a, Rect{0.0, a, 0.0, a}, Rect{a, 1.0, 0.0, a}, Rect{0.0, a, a, 1.0}};
}

// Interior square (n^(eps-1/2), 1]^2.
inline Region interior_region(double n, double epsilon) {
  const double a = std::pow(n, epsilon - 0.5);
  if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("interior_region: n^(eps-1/2) must lie in (0,1)");
  return {Rect{a, 1.0, a, 1.0}};
}

}  // namespace mdst
