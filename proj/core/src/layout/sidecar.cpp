#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "docforge/errors.hpp"
#include "docforge/layout.hpp"

namespace docforge {

namespace {

[[noreturn]] void schema_error(const std::string& what) {
  throw Error(ErrorCode::SidecarSchemaError, what);
}

double require_number(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number()) schema_error(std::string(key) + " must be a number");
  return it->get<double>();
}

}  // namespace

SidecarPredictions SidecarPredictions::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::SidecarMissing, path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

SidecarPredictions SidecarPredictions::parse(std::string_view payload) {
  nlohmann::json j = nlohmann::json::parse(payload, nullptr, false);
  if (j.is_discarded() || !j.is_object()) schema_error("sidecar is not a JSON object");
  auto pages_it = j.find("pages");
  if (pages_it == j.end() || !pages_it->is_array()) schema_error("missing pages array");

  SidecarPredictions out;
  for (const nlohmann::json& pj : *pages_it) {
    if (!pj.is_object()) schema_error("page entry must be an object");
    PageEntry entry;
    entry.page_no = static_cast<int>(require_number(pj, "page_no"));
    if (entry.page_no < 1) schema_error("page_no must be >= 1");
    entry.width = require_number(pj, "width");
    entry.height = require_number(pj, "height");

    auto clusters_it = pj.find("clusters");
    if (clusters_it == pj.end() || !clusters_it->is_array())
      schema_error("missing clusters array");
    int next_id = 0;
    for (const nlohmann::json& cj : *clusters_it) {
      if (!cj.is_object()) schema_error("cluster entry must be an object");
      auto label_it = cj.find("label");
      if (label_it == cj.end() || !label_it->is_string())
        schema_error("cluster label must be a string");
      auto label = item_label_from_string(label_it->get<std::string>());
      if (!label || *label == ItemLabel::Group || *label == ItemLabel::List)
        schema_error("unknown cluster label: " + label_it->get<std::string>());

      LayoutCluster cluster;
      cluster.id = next_id++;
      cluster.label = *label;
      cluster.bbox = BoundingBox::make(require_number(cj, "l"), require_number(cj, "t"),
                                       require_number(cj, "r"), require_number(cj, "b"));
      cluster.confidence = require_number(cj, "confidence");
      if (cluster.confidence < 0.0 || cluster.confidence > 1.0)
        schema_error("confidence outside [0,1]");
      entry.clusters.push_back(std::move(cluster));
    }
    out.pages_.push_back(std::move(entry));
  }
  return out;
}

LayoutPrediction SidecarPredictions::for_page(const ParsedPage& page) const {
  for (const PageEntry& entry : pages_) {
    if (entry.page_no != page.page_no) continue;
    if (std::abs(entry.width - page.width) > 1.0 ||
        std::abs(entry.height - page.height) > 1.0)
      throw Error(ErrorCode::PageMismatch,
                  "sidecar page " + std::to_string(page.page_no) + " is " +
                      std::to_string(entry.width) + "x" + std::to_string(entry.height) +
                      ", parsed page is " + std::to_string(page.width) + "x" +
                      std::to_string(page.height));
    LayoutPrediction prediction;
    prediction.page_no = page.page_no;
    prediction.source = PredictionSource::Sidecar;
    prediction.clusters = entry.clusters;
    return prediction;
  }
  throw Error(ErrorCode::SidecarSchemaError,
              "sidecar has no entry for page " + std::to_string(page.page_no));
}

}  // namespace docforge
