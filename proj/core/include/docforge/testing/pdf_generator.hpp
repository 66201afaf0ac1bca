#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "docforge/geometry.hpp"

namespace docforge::pdfgen {

/// How the cross-reference data is encoded in a generated file.
enum class XrefFlavor { Classic, Stream, ObjectStreams };

/// Expected text cell recorded while emitting content. `l`/`t` are TopLeft
/// page coordinates of the cell box under the default ascent rule.
struct GtCell {
  int page_no = 1;
  std::string text;
  double l = 0.0;
  double t = 0.0;
  double font_size = 0.0;
};

/// Intended semantic block, used by the layout-heuristic sanity checks.
struct GtRegion {
  int page_no = 1;
  std::string label;  // kebab-case ItemLabel spelling
  BoundingBox bbox;
};

struct GeneratedPdf {
  std::string name;
  std::vector<std::uint8_t> bytes;
  std::vector<GtCell> cells;      // in expected emission order
  std::vector<GtRegion> regions;
  int pages = 1;
  double gutter_l = 0.0, gutter_r = 0.0;  // two-column fixtures
};

// --- low-level builder -----------------------------------------------------

class PdfBuilder {
public:
  /// Reserves an object number for a non-stream object (packable into an
  /// object stream). Body is the serialized direct object.
  int add_object(std::string body);

  /// Reserves a number whose body is supplied later (for forward refs).
  int reserve_object();
  void set_object(int number, std::string body);

  /// Adds a stream object. When `flate` is set the data is compressed and
  /// /Filter emitted; `ascii_hex` instead encodes with ASCIIHexDecode.
  int add_stream(std::string dict_entries, std::vector<std::uint8_t> data, bool flate,
                 bool ascii_hex = false);

  int next_object_number() const { return static_cast<int>(objects_.size()) + 1; }

  /// Serializes the file. `root` is the catalog's object number.
  std::vector<std::uint8_t> build(XrefFlavor flavor, int root,
                                  const std::string& extra_trailer_entries = "");

private:
  struct Obj {
    std::string body;
    bool packable = false;
  };
  std::vector<Obj> objects_;
};

// --- content composition with ground truth ---------------------------------

struct TjSeg {
  std::string text;            // WinAnsi bytes (keep to ASCII)
  double adjust_after = 0.0;   // TJ number emitted after text, in 1/1000 em
};

/// Builds one page's content stream while simulating the documented cell
/// geometry, so every fixture carries its own expected cells.
class PageComposer {
public:
  PageComposer(double width, double height, double split_gap_em = 1.0)
      : width_(width), height_(height), split_gap_em_(split_gap_em) {}

  /// `resource` like "F1"; metrics must match the font object the caller
  /// registers under that name. kind: 0 standard-14 by name, 1 custom widths
  /// formula, 2 identity-h formula.
  void use_font(const std::string& resource, const std::string& base_font, double size);
  void use_custom_font(const std::string& resource, double size);
  void use_cid_font(const std::string& resource, double size);

  void text_at(double x, double baseline_y, const std::string& ascii);
  void tj_at(double x, double baseline_y, const std::vector<TjSeg>& segs);
  void cid_text_at(double x, double baseline_y, const std::string& ascii);

  void image_at(double x, double y, double w, double h, const std::string& resource);

  const std::string& content() const { return ops_; }
  std::vector<GtCell> take_cells() { return std::move(cells_); }
  std::vector<BoundingBox> image_regions() const { return image_regions_; }

  double width() const { return width_; }
  double height() const { return height_; }

  /// Width of an ASCII string in points under the current font.
  double measure(const std::string& ascii) const;

  static double custom_width_formula(unsigned char code) {
    return 400.0 + static_cast<double>((code * 7) % 200);
  }
  static double cid_width_formula(std::uint32_t cid) {
    return 500.0 + static_cast<double>(cid % 5) * 20.0;
  }

private:
  double glyph_width(unsigned char code) const;  // 1/1000 em under current font
  void emit_cells(double x, double y, const std::vector<TjSeg>& segs, bool cid);

  double width_, height_, split_gap_em_;
  std::string ops_;
  std::vector<GtCell> cells_;
  std::vector<BoundingBox> image_regions_;

  std::string font_resource_ = "F1";
  std::string base_font_ = "Helvetica";
  int font_kind_ = 0;  // 0 std14, 1 custom, 2 cid
  double font_size_ = 12.0;
};

// --- fixtures ----------------------------------------------------------------

GeneratedPdf make_paragraph_page(std::uint32_t seed, XrefFlavor flavor, bool compress);
GeneratedPdf make_two_column_page(std::uint32_t seed, XrefFlavor flavor);
GeneratedPdf make_kerning_page(std::uint32_t seed, XrefFlavor flavor);
GeneratedPdf make_identity_h_page(std::uint32_t seed, XrefFlavor flavor);
GeneratedPdf make_article_page(std::uint32_t seed, XrefFlavor flavor, bool compress);
GeneratedPdf make_table_page(std::uint32_t seed, int rows, int cols, XrefFlavor flavor);
GeneratedPdf make_multi_page(std::uint32_t seed, int n_pages, XrefFlavor flavor);
GeneratedPdf make_empty_page(XrefFlavor flavor);
GeneratedPdf make_bitmap_page(XrefFlavor flavor);

GeneratedPdf make_corrupt_page_stream();  // page 1 fine, page 2 undecodable
std::vector<std::uint8_t> make_truncated_file();
std::vector<std::uint8_t> make_encrypted_file();
std::vector<std::uint8_t> make_bad_startxref_file();  // recovers via scan

/// Deterministic mixed suite (>= count fixtures) cycling fixture kinds and
/// xref flavors; used by the geometry acceptance criterion.
std::vector<GeneratedPdf> standard_suite(int count);

}  // namespace docforge::pdfgen
