#include <algorithm>
#include <cmath>
#include <map>

#include "docforge/layout.hpp"

namespace docforge {

namespace {

bool keeps_empty(ItemLabel label) {
  return label == ItemLabel::Picture || label == ItemLabel::Table ||
         label == ItemLabel::Formula;
}

bool conflicts(const LayoutCluster& a, const LayoutCluster& b) {
  if (iou(a.bbox, b.bbox) > 0.8) return true;
  const LayoutCluster& smaller = a.bbox.area() <= b.bbox.area() ? a : b;
  const LayoutCluster& larger = a.bbox.area() <= b.bbox.area() ? b : a;
  return containment_fraction(smaller.bbox, larger.bbox) >= 0.9;
}

}  // namespace

std::vector<LayoutCluster> postprocess_clusters(const LayoutPrediction& prediction,
                                                const ParsedPage& page) {
  // Normalize input order so proposal shuffling cannot change the outcome.
  std::vector<LayoutCluster> proposals = prediction.clusters;
  for (LayoutCluster& cluster : proposals) cluster.cells.clear();
  std::sort(proposals.begin(), proposals.end(),
            [](const LayoutCluster& a, const LayoutCluster& b) { return a.id < b.id; });

  // (1) Overlap removal: priority by confidence, then area, then lower id.
  std::vector<const LayoutCluster*> priority;
  priority.reserve(proposals.size());
  for (const LayoutCluster& cluster : proposals) priority.push_back(&cluster);
  std::sort(priority.begin(), priority.end(),
            [](const LayoutCluster* a, const LayoutCluster* b) {
              if (a->confidence != b->confidence) return a->confidence > b->confidence;
              const double area_a = a->bbox.area(), area_b = b->bbox.area();
              if (area_a != area_b) return area_a > area_b;
              return a->id < b->id;
            });

  std::vector<LayoutCluster> kept;
  for (const LayoutCluster* candidate : priority) {
    bool dropped = false;
    for (const LayoutCluster& survivor : kept) {
      if (conflicts(*candidate, survivor)) {
        dropped = true;
        break;
      }
    }
    if (!dropped) kept.push_back(*candidate);
  }
  std::sort(kept.begin(), kept.end(),
            [](const LayoutCluster& a, const LayoutCluster& b) { return a.id < b.id; });

  // (2) Token intersection: each cell goes to the cluster covering the
  // largest fraction of it (>= 0.2), ties to the smaller id.
  std::map<int, std::size_t> by_id;
  for (std::size_t i = 0; i < kept.size(); ++i) by_id[kept[i].id] = i;

  std::vector<const TextCell*> orphans;
  for (const TextCell& cell : page.cells) {
    const double cell_area = cell.bbox.area();
    double best_fraction = 0.0;
    int best_id = -1;
    // `kept` is id-ascending, so a strict > leaves ties with the smaller id.
    for (const LayoutCluster& cluster : kept) {
      const double fraction =
          cell_area <= 0.0 ? 0.0 : intersection_area(cell.bbox, cluster.bbox) / cell_area;
      if (fraction > best_fraction) {
        best_fraction = fraction;
        best_id = cluster.id;
      }
    }
    if (best_id >= 0 && best_fraction >= 0.2) {
      kept[by_id[best_id]].cells.push_back(cell.stream_index);
    } else {
      orphans.push_back(&cell);
    }
  }

  // (3) Orphan cells wrap into new Text clusters, one per line.
  int next_id = 0;
  for (const LayoutCluster& cluster : kept) next_id = std::max(next_id, cluster.id + 1);

  std::sort(orphans.begin(), orphans.end(), [](const TextCell* a, const TextCell* b) {
    if (a->bbox.b != b->bbox.b) return a->bbox.b < b->bbox.b;
    return a->bbox.l < b->bbox.l;
  });
  std::vector<LayoutCluster> orphan_lines;
  for (const TextCell* cell : orphans) {
    const double tolerance = 0.4 * std::max(1.0, cell->font_size);
    if (!orphan_lines.empty() &&
        std::abs(cell->bbox.b - orphan_lines.back().bbox.b) <= tolerance) {
      LayoutCluster& line = orphan_lines.back();
      line.bbox = union_box(line.bbox, cell->bbox);
      line.cells.push_back(cell->stream_index);
    } else {
      LayoutCluster line;
      line.id = next_id++;
      line.label = ItemLabel::Text;
      line.bbox = cell->bbox;
      line.confidence = 0.5;
      line.cells.push_back(cell->stream_index);
      orphan_lines.push_back(std::move(line));
    }
  }

  // (4) Tighten to the union of assigned cells (Picture/Table keep at least
  // their proposed box), (5) drop empty non-Picture/Table/Formula clusters.
  std::map<int, const TextCell*> by_stream;
  for (const TextCell& cell : page.cells) by_stream[cell.stream_index] = &cell;

  std::vector<LayoutCluster> out;
  auto finish = [&](LayoutCluster cluster) {
    if (cluster.cells.empty()) {
      if (!keeps_empty(cluster.label)) return;
      out.push_back(std::move(cluster));
      return;
    }
    std::sort(cluster.cells.begin(), cluster.cells.end());
    BoundingBox tight = by_stream.at(cluster.cells.front())->bbox;
    for (int id : cluster.cells) tight = union_box(tight, by_stream.at(id)->bbox);
    if (cluster.label == ItemLabel::Picture || cluster.label == ItemLabel::Table) {
      cluster.bbox = union_box(cluster.bbox, tight);
    } else {
      cluster.bbox = tight;
    }
    out.push_back(std::move(cluster));
  };

  for (LayoutCluster& cluster : kept) finish(std::move(cluster));
  for (LayoutCluster& cluster : orphan_lines) finish(std::move(cluster));

  std::sort(out.begin(), out.end(),
            [](const LayoutCluster& a, const LayoutCluster& b) { return a.id < b.id; });
  return out;
}

}  // namespace docforge
