#pragma once

#include <string>
#include <vector>

#include "docforge/document.hpp"
#include "docforge/geometry.hpp"
#include "docforge/pdf_backend.hpp"

namespace docforge {

/// Labeled bounding-box proposal grouping page cells into a semantic unit.
struct LayoutCluster {
  int id = 0;
  ItemLabel label = ItemLabel::Text;  // non-structural subset (no Group/List)
  BoundingBox bbox;
  double confidence = 0.5;
  std::vector<int> cells;  // stream indices of assigned page cells

  bool operator==(const LayoutCluster&) const = default;
};

enum class PredictionSource { Heuristic, Sidecar };

struct LayoutPrediction {
  int page_no = 1;
  std::vector<LayoutCluster> clusters;
  PredictionSource source = PredictionSource::Heuristic;
};

/// Deterministic rule-based segmentation: cells are merged into lines, lines
/// into blocks, blocks labeled by position/size/pattern rules. Confidences
/// are fixed at 0.5.
LayoutPrediction predict_layout_heuristic(const ParsedPage& page);

/// Externally produced predictions standing in for a neural layout model.
/// File format: one JSON object per document, see docs/schema.md.
class SidecarPredictions {
public:
  /// Throws Error(SidecarMissing | SidecarSchemaError).
  static SidecarPredictions load_file(const std::string& path);
  static SidecarPredictions parse(std::string_view payload);

  /// Predictions for one parsed page. Throws Error(PageMismatch) when the
  /// sidecar's page dimensions differ from the parsed ones by more than 1pt,
  /// and Error(SidecarSchemaError) when the page is absent.
  LayoutPrediction for_page(const ParsedPage& page) const;

private:
  struct PageEntry {
    int page_no = 1;
    double width = 0, height = 0;
    std::vector<LayoutCluster> clusters;
  };
  std::vector<PageEntry> pages_;
};

/// Overlap removal, token intersection, orphan wrapping, bbox tightening.
/// The result partitions the page's cells: each cell index appears in exactly
/// one returned cluster.
std::vector<LayoutCluster> postprocess_clusters(const LayoutPrediction& prediction,
                                                const ParsedPage& page);

}  // namespace docforge
