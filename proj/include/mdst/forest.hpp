#pragma once

// Minimal directed spanning forests: every point that has a predecessor under
// the cone order is joined to its nearest predecessor.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "mdst/geometry.hpp"
#include "mdst/pointproc.hpp"

namespace mdst {

struct Neighbour {
  std::size_t index;
  double distance;

  friend bool operator==(const Neighbour&, const Neighbour&) = default;
};

struct Edge {
  std::size_t source;
  std::size_t target;
  double length;

  friend bool operator==(const Edge&, const Edge&) = default;
};

class DuplicatePointError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Forest {
  std::vector<Point> points;
  bool rooted = false;
  ConeOrder order = ConeOrder::componentwise();
  std::vector<Edge> edges;  // sorted by source
  std::vector<std::size_t> minimal_indices;  // sorted
};

namespace detail {

// (squared distance, index) lexicographic: smaller distance wins, then smaller index.
inline bool better(double d2, std::size_t idx, double best_d2, std::size_t best_idx) noexcept {
  return d2 < best_d2 || (d2 == best_d2 && idx < best_idx);
}

inline constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

}  // namespace detail

// Exhaustive O(n) predecessor search.
inline std::optional<Neighbour> directed_nn(std::size_t i, std::span<const Point> points, const ConeOrder& order) {
  if (i >= points.size()) throw std::out_of_range("directed_nn: index out of range");
  const Point& p = points[i];
  double best_d2 = std::numeric_limits<double>::infinity();
  std::size_t best = detail::kNone;
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (j == i || !order.precedes(points[j], p)) continue;
    const double d2 = squared_distance(p, points[j]);
    if (detail::better(d2, j, best_d2, best)) {
      best_d2 = d2;
      best = j;
    }
  }
  if (best == detail::kNone) return std::nullopt;
  return Neighbour{best, std::sqrt(best_d2)};
}

inline std::optional<Neighbour> directed_nn(std::size_t i, const PointSample& sample, const ConeOrder& order) {
  return directed_nn(i, std::span<const Point>(sample.points), order);
}

// Uniform bucket grid answering directed nearest-neighbour queries by
// searching expanding L-infinity rings of cells around the query point.
class DirectedNeighbourIndex {
 public:
  DirectedNeighbourIndex(std::span<const Point> points, const ConeOrder& order) : points_(points), order_(order) {
    const std::size_t n = points.size();
    if (n == 0) return;
    double x_lo = points[0].x, x_hi = points[0].x, y_lo = points[0].y, y_hi = points[0].y;
    for (const auto& p : points) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw std::invalid_argument("DirectedNeighbourIndex: non-finite coordinate");
      x_lo = std::min(x_lo, p.x);
      x_hi = std::max(x_hi, p.x);
      y_lo = std::min(y_lo, p.y);
      y_hi = std::max(y_hi, p.y);
    }
    const double w = std::max(x_hi - x_lo, 1e-300);
    const double h = std::max(y_hi - y_lo, 1e-300);
    const double side = std::max(w, h);
    cell_ = std::sqrt(std::max(w * h, side * side * 1e-12) / static_cast<double>(n));
    if (!(cell_ > 0.0)) cell_ = side;
    x0_ = x_lo;
    y0_ = y_lo;
    const double max_cells = 4.0 * static_cast<double>(n) + 16.0;
    gx_ = static_cast<int>(std::clamp(std::floor(w / cell_) + 1.0, 1.0, max_cells));
    gy_ = static_cast<int>(std::clamp(std::floor(h / cell_) + 1.0, 1.0, max_cells));
    while (static_cast<double>(gx_) * gy_ > max_cells) {
      cell_ *= 1.5;
      gx_ = static_cast<int>(std::floor(w / cell_) + 1.0);
      gy_ = static_cast<int>(std::floor(h / cell_) + 1.0);
    }

    start_.assign(static_cast<std::size_t>(gx_) * gy_ + 1, 0);
    cell_of_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = cell_id(col(points[i].x), row(points[i].y));
      cell_of_[i] = c;
      ++start_[c + 1];
    }
    for (std::size_t c = 1; c < start_.size(); ++c) start_[c] += start_[c - 1];
    entries_.resize(n);
    std::vector<std::uint32_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = cell_of_[i];
      entries_[fill[c]++] = Entry{points[i].x, points[i].y, i};
    }
    check_duplicates();
  }

  std::optional<Neighbour> query(std::size_t i) const {
    const Point p = points_[i];
    const int cx = col(p.x);
    const int cy = row(p.y);
    const bool quadrant = order_.is_componentwise();
    const int k_max = quadrant ? std::max(cx, cy) : std::max({cx, gx_ - 1 - cx, cy, gy_ - 1 - cy});
    const double slack = 1e-9 * cell_;

    double best_d2 = std::numeric_limits<double>::infinity();
    std::size_t best = detail::kNone;

    auto scan_cell = [&](int ccx, int ccy) {
      if (ccx < 0 || ccy < 0 || ccx >= gx_ || ccy >= gy_) return;
      const double bx_lo = x0_ + ccx * cell_, bx_hi = bx_lo + cell_;
      const double by_lo = y0_ + ccy * cell_, by_hi = by_lo + cell_;
      if (best != detail::kNone) {
        const double ddx = std::max({0.0, bx_lo - p.x, p.x - bx_hi});
        const double ddy = std::max({0.0, by_lo - p.y, p.y - by_hi});
        const double lb = std::max(0.0, std::sqrt(ddx * ddx + ddy * ddy) - slack);
        if (lb * lb > best_d2) return;
      }
      if (!quadrant && !order_.may_intersect_box(p, bx_lo - slack, bx_hi + slack, by_lo - slack, by_hi + slack)) return;
      const auto c = cell_id(ccx, ccy);
      for (std::uint32_t e = start_[c]; e < start_[c + 1]; ++e) {
        const Entry& q = entries_[e];
        if (q.index == i) continue;
        const Point qp{q.x, q.y};
        if (!order_.precedes(qp, p)) continue;
        const double d2 = squared_distance(p, qp);
        if (detail::better(d2, q.index, best_d2, best)) {
          best_d2 = d2;
          best = q.index;
        }
      }
    };

    for (int k = 0; k <= k_max; ++k) {
      if (k > 0 && best != detail::kNone) {
        // every point in ring k lies outside the box covered by rings < k
        const double left = p.x - (x0_ + (cx - k + 1) * cell_);
        const double bottom = p.y - (y0_ + (cy - k + 1) * cell_);
        double lb = std::min(left, bottom);
        if (!quadrant) {
          const double right = x0_ + (cx + k) * cell_ - p.x;
          const double top = y0_ + (cy + k) * cell_ - p.y;
          lb = std::min({lb, right, top});
        }
        lb -= slack;
        if (lb > 0.0 && lb * lb > best_d2) break;
      }
      if (k == 0) {
        scan_cell(cx, cy);
      } else if (quadrant) {
        for (int j = 0; j <= k; ++j) scan_cell(cx - k, cy - j);
        for (int j = 0; j < k; ++j) scan_cell(cx - j, cy - k);
      } else {
        for (int j = -k; j <= k; ++j) {
          scan_cell(cx + j, cy - k);
          scan_cell(cx + j, cy + k);
        }
        for (int j = -k + 1; j <= k - 1; ++j) {
          scan_cell(cx - k, cy + j);
          scan_cell(cx + k, cy + j);
        }
      }
    }
    if (best == detail::kNone) return std::nullopt;
    return Neighbour{best, std::sqrt(best_d2)};
  }

 private:
  struct Entry {
    double x, y;
    std::size_t index;
  };

  int col(double x) const noexcept {
    const int c = static_cast<int>((x - x0_) / cell_);
    return std::clamp(c, 0, gx_ - 1);
  }
  int row(double y) const noexcept {
    const int r = static_cast<int>((y - y0_) / cell_);
    return std::clamp(r, 0, gy_ - 1);
  }
  std::uint32_t cell_id(int c, int r) const noexcept {
    return static_cast<std::uint32_t>(r) * static_cast<std::uint32_t>(gx_) + static_cast<std::uint32_t>(c);
  }

  void check_duplicates() {
    std::vector<Point> scratch;
    for (std::size_t c = 0; c + 1 < start_.size(); ++c) {
      const auto b = start_[c], e = start_[c + 1];
      if (e - b < 2) continue;
      scratch.clear();
      for (auto k = b; k < e; ++k) scratch.push_back({entries_[k].x, entries_[k].y});
      std::sort(scratch.begin(), scratch.end(),
                [](const Point& a, const Point& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
      if (std::adjacent_find(scratch.begin(), scratch.end()) != scratch.end())
        throw DuplicatePointError("build_forest: duplicate points");
    }
  }

  std::span<const Point> points_;
  ConeOrder order_;
  double x0_ = 0.0, y0_ = 0.0, cell_ = 1.0;
  int gx_ = 1, gy_ = 1;
  std::vector<std::uint32_t> start_;
  std::vector<std::uint32_t> cell_of_;
  std::vector<Entry> entries_;
};

namespace detail {

template <class Query>
Forest assemble_forest(std::span<const Point> points, bool rooted, const ConeOrder& order, Query&& query) {
  Forest f;
  f.points.assign(points.begin(), points.end());
  f.rooted = rooted;
  f.order = order;
  f.edges.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (auto nb = query(i))
      f.edges.push_back(Edge{i, nb->index, nb->distance});
    else
      f.minimal_indices.push_back(i);
  }
  return f;
}

}  // namespace detail

inline Forest build_forest(std::span<const Point> points, const ConeOrder& order, bool rooted = false) {
  if (points.size() > std::numeric_limits<std::uint32_t>::max() / 2)
    throw std::length_error("build_forest: too many points");
  DirectedNeighbourIndex index(points, order);
  return detail::assemble_forest(points, rooted, order, [&](std::size_t i) { return index.query(i); });
}

inline Forest build_forest(const PointSample& sample, const ConeOrder& order) {
  return build_forest(std::span<const Point>(sample.points), order, sample.rooted);
}

inline Forest build_forest_naive(std::span<const Point> points, const ConeOrder& order, bool rooted = false) {
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j]) throw DuplicatePointError("build_forest_naive: duplicate points");
  return detail::assemble_forest(points, rooted, order, [&](std::size_t i) { return directed_nn(i, points, order); });
}

inline Forest build_forest_naive(const PointSample& sample, const ConeOrder& order) {
  return build_forest_naive(std::span<const Point>(sample.points), order, sample.rooted);
}

inline double total_weight(const Forest& f, double alpha) {
  double s = 0.0;
  for (const auto& e : f.edges) s += weight_of(e.length, alpha);
  return s;
}

// Weight of edges whose source lies in the region.
inline double restricted_weight(const Forest& f, double alpha, std::span<const Rect> region) {
  double s = 0.0;
  for (const auto& e : f.edges)
    if (region_contains(region, f.points[e.source])) s += weight_of(e.length, alpha);
  return s;
}

// Weight of edges into the root (index 0).
inline double root_weight(const Forest& f, double alpha) {
  if (!f.rooted) throw std::invalid_argument("root_weight: forest is not rooted");
  double s = 0.0;
  for (const auto& e : f.edges)
    if (e.target == 0) s += weight_of(e.length, alpha);
  return s;
}

inline std::size_t count_minimal(const PointSample& sample, const ConeOrder& order) {
  return build_forest(sample, order).minimal_indices.size();
}

inline void write_edges_csv(const Forest& f, std::ostream& os) {
  os << "source_x,source_y,target_x,target_y,length\n";
  char buf[160];
  for (const auto& e : f.edges) {
    const Point& s = f.points[e.source];
    const Point& t = f.points[e.target];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", s.x, s.y, t.x, t.y, e.length);
    os << buf;
  }
}

}  // namespace mdst
