#pragma once

// Directed linear forests: each arriving value is joined to the largest
// earlier value below it (the on-line nearest left neighbour).

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "mdst/geometry.hpp"
#include "mdst/pointproc.hpp"

namespace mdst {

struct LinearEdge {
  std::size_t inserted;
  std::size_t parent;
  double gap;

  friend bool operator==(const LinearEdge&, const LinearEdge&) = default;
};

struct LinearForest {
  std::vector<double> values;
  bool rooted = false;
  std::vector<LinearEdge> edges;  // sorted by inserted index
};

class DuplicateValueError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {
inline constexpr std::uint32_t kNoLink = std::numeric_limits<std::uint32_t>::max();
}

// Scratch buffers reused across sequences by hot loops.
struct DlfWorkspace {
  std::vector<std::uint32_t> order;  // value rank -> insertion index
  std::vector<std::uint32_t> rank;  // insertion index -> value rank
  std::vector<std::uint32_t> prev;  // sorted-order linked list
  std::vector<std::uint32_t> next;
  std::vector<std::uint32_t> parent;  // insertion index -> parent insertion index
};

// parent[i] = insertion index of max{x_j : j < i, x_j < x_i}, or kNoLink.
//
// Offline: sort once, thread the sorted values into a doubly linked list and
// delete them in reverse insertion order.  When i is deleted the list holds
// exactly x_0..x_i, so its list predecessor is the largest earlier value
// below it.  O(m log m) for the sort, O(m) afterwards.
inline void left_parents(std::span<const double> values, DlfWorkspace& ws) {
  const auto m = static_cast<std::uint32_t>(values.size());
  ws.order.resize(m);
  ws.rank.resize(m);
  ws.prev.resize(m);
  ws.next.resize(m);
  ws.parent.assign(m, detail::kNoLink);
  std::iota(ws.order.begin(), ws.order.end(), 0u);
  std::sort(ws.order.begin(), ws.order.end(), [&](std::uint32_t a, std::uint32_t b) { return values[a] < values[b]; });
  for (std::uint32_t r = 0; r < m; ++r) {
    if (r > 0 && values[ws.order[r]] == values[ws.order[r - 1]])
      throw DuplicateValueError("build_dlf: duplicate values");
    ws.rank[ws.order[r]] = r;
    ws.prev[r] = r == 0 ? detail::kNoLink : r - 1;
    ws.next[r] = r + 1 == m ? detail::kNoLink : r + 1;
  }
  for (std::uint32_t i = m; i-- > 0;) {
    const std::uint32_t r = ws.rank[i];
    const std::uint32_t pr = ws.prev[r];
    const std::uint32_t nx = ws.next[r];
    if (pr != detail::kNoLink) {
      ws.parent[i] = ws.order[pr];
      ws.next[pr] = nx;
    }
    if (nx != detail::kNoLink) ws.prev[nx] = pr;
  }
}

inline LinearForest build_dlf(std::span<const double> values, bool rooted) {
  if (rooted && (values.empty() || values[0] != 0.0))
    throw std::invalid_argument("build_dlf: rooted sequence must start with 0");
  DlfWorkspace ws;
  left_parents(values, ws);
  LinearForest f;
  f.values.assign(values.begin(), values.end());
  f.rooted = rooted;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (ws.parent[i] != detail::kNoLink) f.edges.push_back({i, ws.parent[i], values[i] - values[ws.parent[i]]});
  return f;
}

inline LinearForest build_dlf(const UniformSequence& seq) { return build_dlf(seq.values, seq.rooted); }

// Linear-scan construction used as an oracle in tests.
inline LinearForest build_dlf_naive(std::span<const double> values, bool rooted) {
  LinearForest f;
  f.values.assign(values.begin(), values.end());
  f.rooted = rooted;
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::size_t best = values.size();
    for (std::size_t j = 0; j < i; ++j) {
      if (values[j] == values[i]) throw DuplicateValueError("build_dlf_naive: duplicate values");
      if (values[j] < values[i] && (best == values.size() || values[j] > values[best])) best = j;
    }
    if (best != values.size()) f.edges.push_back({i, best, values[i] - values[best]});
  }
  return f;
}

inline double dlf_weight(const LinearForest& f, double alpha) {
  double s = 0.0;
  for (const auto& e : f.edges) s += weight_of(e.gap, alpha);
  return s;
}

// Z_1..Z_m: the gap created by each insertion after the root.
inline std::vector<double> increments(const LinearForest& f) {
  if (!f.rooted) throw std::invalid_argument("increments: sequence must be rooted");
  std::vector<double> z;
  z.reserve(f.edges.size());
  for (const auto& e : f.edges) z.push_back(e.gap);
  return z;
}

inline std::vector<double> increments(const UniformSequence& seq) {
  if (!seq.rooted) throw std::invalid_argument("increments: sequence must be rooted");
  return increments(build_dlf(seq));
}

// Weight of the edges into the root; the root's children are the lower records.
inline double root_edge_weight(const LinearForest& f, double alpha) {
  if (!f.rooted) throw std::invalid_argument("root_edge_weight: forest is not rooted");
  double s = 0.0;
  for (const auto& e : f.edges)
    if (e.parent == 0) s += weight_of(e.gap, alpha);
  return s;
}

// The same quantity through the lower-record ratio series
// U_1^a + (U_1 U_2)^a + ..., with U_k the ratio of successive lower records.
inline double lower_record_series(std::span<const double> unrooted_values, double alpha) {
  double s = 0.0;
  double record = std::numeric_limits<double>::infinity();
  for (double v : unrooted_values) {
    if (v < record) {
      record = v;
      s += weight_of(record, alpha);
    }
  }
  return s;
}

// Sorted lengths of the m+1 fragments of (0,1] cut by the values.
inline std::vector<double> ordered_spacings(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("ordered_spacings: need at least one value");
  std::vector<double> cuts(values.begin(), values.end());
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> s;
  s.reserve(cuts.size() + 1);
  double last = 0.0;
  for (double c : cuts) {
    s.push_back(c - last);
    last = c;
  }
  s.push_back(1.0 - last);
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace mdst
