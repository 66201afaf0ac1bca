#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "docforge/document.hpp"
#include "docforge/layout.hpp"
#include "docforge/markup.hpp"
#include "docforge/pdf_backend.hpp"
#include "docforge/table_structure.hpp"

namespace docforge {

enum class LayoutSource { Heuristic, Sidecar };

struct ConversionOptions {
  bool do_table_structure = true;
  LayoutSource layout_source = LayoutSource::Heuristic;
  std::string sidecar_path;  // used when layout_source == Sidecar
  int thread_budget = 1;     // >= 1; page-level parallelism inside a document
  double cell_split_gap_em = 1.0;
};

enum class ConversionStatus { Success, PartialSuccess, Failure };

std::string_view to_string(ConversionStatus status);

/// Pipeline stages tracked by the profiler.
enum class Stage { BackendParse, Layout, TableStructure, Assembly };

inline constexpr Stage kAllStages[] = {Stage::BackendParse, Stage::Layout,
                                       Stage::TableStructure, Stage::Assembly};

std::string_view to_string(Stage stage);

/// Wall-clock stage timings for one page, in integer nanoseconds so sums
/// stay exact.
struct PageTiming {
  int page_no = 1;
  std::int64_t stage_ns[4] = {0, 0, 0, 0};
  bool stage_applied[4] = {false, false, false, false};

  std::int64_t total_ns() const {
    return stage_ns[0] + stage_ns[1] + stage_ns[2] + stage_ns[3];
  }
};

/// One page after the per-page model stages.
struct PageResult {
  int page_no = 1;
  double width = 0, height = 0;
  std::vector<LayoutCluster> clusters;             // post-processed, reading order
  std::map<int, TableStructure> tables;            // cluster id -> structure
  std::map<int, int> caption_for;                  // caption cluster id -> target id
  std::vector<TextCell> cells;
  PageTiming timing;
  bool failed = false;
  std::vector<std::string> warnings;
};

struct ConversionResult {
  ConversionStatus status = ConversionStatus::Failure;
  std::optional<DoclingDocument> document;
  std::vector<std::string> warnings;
  std::vector<std::string> errors;
  InputFormat format = InputFormat::Unknown;
  std::vector<PageTiming> page_timings;  // PDF pipeline only
  std::int64_t total_ns = 0;
};

/// Routes the input to the fitting pipeline (PDF -> standard pipeline,
/// HTML/Markdown -> simple pipeline) and assembles a document. Per-page
/// failures downgrade to PartialSuccess; whole-file failures set status
/// Failure with the error recorded (never thrown).
ConversionResult convert(std::span<const std::uint8_t> bytes, std::string_view filename,
                         const ConversionOptions& options = {},
                         std::optional<InputFormat> forced_format = std::nullopt);

/// Standard PDF pipeline: per page layout -> postprocess -> table structure,
/// with per-stage wall-clock timings. Page order is preserved regardless of
/// execution order.
std::vector<PageResult> run_pdf_pipeline(const ParsedPdf& parsed,
                                         const ConversionOptions& options);

/// Recursive XY-cut: split at the widest full-width horizontal whitespace
/// gap >= 8pt, else the widest full-height vertical gap >= 12pt (left half
/// first); leaves order by (top, left). The result is a permutation of the
/// input.
std::vector<LayoutCluster> reading_order(std::vector<LayoutCluster> clusters);

/// Assigns each Caption cluster to the nearest Table/Picture by vertical
/// edge distance (below first, then above, within 48pt, horizontal overlap
/// >= 30%); a target takes at most one caption. Returns caption id -> target.
std::map<int, int> match_captions(const std::vector<LayoutCluster>& ordered);

/// Builds the document from reading-ordered page results: section groups
/// from header font-size rank, list folding, caption refs, furniture.
DoclingDocument assemble(const std::vector<PageResult>& pages, std::string name,
                         DocumentOrigin origin, std::vector<std::string>* warnings = nullptr);

}  // namespace docforge
