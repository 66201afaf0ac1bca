#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "docforge/geometry.hpp"

namespace docforge {

/// One contiguous run of glyphs from the content stream, with geometry in
/// TopLeft page coordinates (points).
struct TextCell {
  std::string text;  // UTF-8
  BoundingBox bbox;
  double font_size = 0.0;
  std::string font_name;
  int stream_index = 0;  // order of emission within the page

  bool operator==(const TextCell&) const = default;
};

struct ParsedPage {
  int page_no = 1;  // 1-based
  double width = 0.0;
  double height = 0.0;
  std::vector<TextCell> cells;
  std::vector<BoundingBox> bitmap_regions;  // image placements

  bool operator==(const ParsedPage&) const = default;
};

struct ParsedPdf {
  std::vector<ParsedPage> pages;
  std::vector<std::string> warnings;
  std::vector<int> failed_pages;  // pages whose content stream was unreadable

  // Profiling: object-graph decode time and per-page extraction time.
  std::int64_t decode_ns = 0;
  std::vector<std::int64_t> page_extract_ns;

  bool operator==(const ParsedPdf& other) const {
    return pages == other.pages && warnings == other.warnings &&
           failed_pages == other.failed_pages;
  }
};

struct PdfParseOptions {
  /// Horizontal gap (in multiples of the font size) beyond which a new text
  /// cell is started; guards against merging across column gutters.
  double cell_split_gap_em = 1.0;
  /// Pages are interpreted concurrently once the object graph is decoded.
  int thread_budget = 1;
};

/// Parses a PDF into per-page text cells with exact geometry.
/// Throws Error(NotAPdf | EncryptedPdf | CorruptXref); anything less than a
/// whole-file failure is reported through ParsedPdf::warnings.
ParsedPdf parse_pdf(std::span<const std::uint8_t> bytes, const PdfParseOptions& options = {});

}  // namespace docforge
