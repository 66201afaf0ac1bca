#include <algorithm>

#include "docforge/pipeline.hpp"

namespace docforge {

namespace {

constexpr double kHorizontalGapMin = 8.0;   // gap height splitting top/bottom
constexpr double kVerticalGapMin = 12.0;    // gap width splitting left/right

struct Gap {
  double at = 0.0;     // split coordinate (gap middle)
  double size = 0.0;
};

/// Widest whitespace gap in the projection of boxes onto one axis.
std::optional<Gap> widest_gap(const std::vector<const LayoutCluster*>& group, bool vertical,
                              double min_size) {
  std::vector<std::pair<double, double>> intervals;
  intervals.reserve(group.size());
  for (const LayoutCluster* cluster : group) {
    if (vertical) intervals.emplace_back(cluster->bbox.l, cluster->bbox.r);
    else intervals.emplace_back(cluster->bbox.t, cluster->bbox.b);
  }
  std::sort(intervals.begin(), intervals.end());

  std::optional<Gap> best;
  double covered_to = intervals.front().second;
  for (const auto& [lo, hi] : intervals) {
    if (lo > covered_to) {
      const double size = lo - covered_to;
      if (size >= min_size && (!best || size > best->size))
        best = Gap{0.5 * (covered_to + lo), size};
    }
    covered_to = std::max(covered_to, hi);
  }
  return best;
}

void order_recursive(std::vector<const LayoutCluster*>& group,
                     std::vector<const LayoutCluster*>& out, int depth) {
  if (group.empty()) return;
  if (group.size() == 1 || depth > 64) {
    out.insert(out.end(), group.begin(), group.end());
    return;
  }

  if (auto gap = widest_gap(group, /*vertical=*/false, kHorizontalGapMin)) {
    std::vector<const LayoutCluster*> top, bottom;
    for (const LayoutCluster* cluster : group)
      (cluster->bbox.t < gap->at ? top : bottom).push_back(cluster);
    order_recursive(top, out, depth + 1);
    order_recursive(bottom, out, depth + 1);
    return;
  }

  if (auto gap = widest_gap(group, /*vertical=*/true, kVerticalGapMin)) {
    std::vector<const LayoutCluster*> left, right;
    for (const LayoutCluster* cluster : group)
      (cluster->bbox.l < gap->at ? left : right).push_back(cluster);
    order_recursive(left, out, depth + 1);
    order_recursive(right, out, depth + 1);
    return;
  }

  // Leaf: order by (top, left, id).
  std::sort(group.begin(), group.end(), [](const LayoutCluster* a, const LayoutCluster* b) {
    if (a->bbox.t != b->bbox.t) return a->bbox.t < b->bbox.t;
    if (a->bbox.l != b->bbox.l) return a->bbox.l < b->bbox.l;
    return a->id < b->id;
  });
  out.insert(out.end(), group.begin(), group.end());
}

}  // namespace

std::vector<LayoutCluster> reading_order(std::vector<LayoutCluster> clusters) {
  // Sort by id first so shuffled input cannot change the outcome.
  std::sort(clusters.begin(), clusters.end(),
            [](const LayoutCluster& a, const LayoutCluster& b) { return a.id < b.id; });

  std::vector<const LayoutCluster*> group;
  group.reserve(clusters.size());
  for (const LayoutCluster& cluster : clusters) group.push_back(&cluster);

  std::vector<const LayoutCluster*> ordered;
  ordered.reserve(group.size());
  order_recursive(group, ordered, 0);

  std::vector<LayoutCluster> out;
  out.reserve(ordered.size());
  for (const LayoutCluster* cluster : ordered) out.push_back(*cluster);
  return out;
}

}  // namespace docforge
