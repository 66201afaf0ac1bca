#include "docforge/pdf/content.hpp"

#include <cctype>
#include <cmath>

#include "docforge/pdf/tokenizer.hpp"

namespace docforge::pdf {

Matrix mat_mul(const Matrix& m1, const Matrix& m2) {
  return Matrix{
      m1[0] * m2[0] + m1[1] * m2[2],
      m1[0] * m2[1] + m1[1] * m2[3],
      m1[2] * m2[0] + m1[3] * m2[2],
      m1[2] * m2[1] + m1[3] * m2[3],
      m1[4] * m2[0] + m1[5] * m2[2] + m2[4],
      m1[4] * m2[1] + m1[5] * m2[3] + m2[5],
  };
}

void mat_apply(const Matrix& m, double x, double y, double& out_x, double& out_y) {
  out_x = m[0] * x + m[2] * y + m[4];
  out_y = m[1] * x + m[3] * y + m[5];
}

namespace {

constexpr int kMaxFormDepth = 8;
constexpr double kBaselineEps = 0.01;  // device pts; splits on any real move

struct GraphicsState {
  Matrix ctm = kIdentity;
  std::shared_ptr<const Font> font;
  double font_size = 0.0;
  double char_spacing = 0.0;
  double word_spacing = 0.0;
  double h_scale = 1.0;  // Tz / 100
  double leading = 0.0;
};

class Interpreter {
public:
  Interpreter(const PreparedPage& page, double split_gap_em)
      : page_(page), split_gap_em_(split_gap_em) {
    state_.ctm = page.base;
  }

  ExtractionResult run() {
    execute(page_.content, page_.resources.get(), 0);
    flush_cell();
    clip_to_page();
    result_.warnings.insert(result_.warnings.begin(), page_.warnings.begin(),
                            page_.warnings.end());
    if (page_.rotated) warn_once(rotated_page_warned_, "page rotation applied to coordinates");
    return std::move(result_);
  }

private:
  // --- cell accumulation ---------------------------------------------------

  struct PendingCell {
    bool active = false;
    bool rotated = false;
    std::u32string text;
    double start_x = 0.0, min_x = 0.0, max_x = 0.0;
    double baseline = 0.0;
    double size_dev = 0.0;
    double ascent = 0.8, descent = -0.2;
    double min_y = 0.0, max_y = 0.0;  // rotated cells: quad hull
    std::string font_name;
    double pen_end = 0.0;  // ink end of previous glyph (device x)
  };

  static std::string utf32_to_utf8(const std::u32string& text) {
    std::string out;
    out.reserve(text.size());
    for (char32_t cp : text) append_utf8(out, cp);
    return out;
  }

  static bool all_whitespace(const std::u32string& text) {
    for (char32_t cp : text)
      if (cp != U' ' && cp != U'\t' && cp != U'\n' && cp != U'\r' && cp != 0x00A0)
        return false;
    return true;
  }

  void flush_cell() {
    if (!cell_.active) return;
    cell_.active = false;
    if (cell_.text.empty() || all_whitespace(cell_.text)) return;

    TextCell out;
    out.text = utf32_to_utf8(cell_.text);
    out.font_size = quantize_coord(cell_.size_dev);
    out.font_name = cell_.font_name;
    if (!cell_.rotated) {
      const double top = cell_.baseline - cell_.ascent * cell_.size_dev;
      const double bottom = cell_.baseline - cell_.descent * cell_.size_dev;
      out.bbox = BoundingBox::make(cell_.min_x, top, cell_.max_x, bottom);
    } else {
      out.bbox = BoundingBox::make(cell_.min_x, cell_.min_y, cell_.max_x, cell_.max_y);
    }
    out.stream_index = static_cast<int>(result_.cells.size());
    result_.cells.push_back(std::move(out));
  }

  void clip_to_page() {
    std::vector<TextCell> kept;
    kept.reserve(result_.cells.size());
    const BoundingBox page_box = BoundingBox::make(0, 0, page_.width, page_.height);
    for (TextCell& cell : result_.cells) {
      if (intersection_area(cell.bbox, page_box) <= 0.0) {
        warn_once(offpage_warned_, "text positioned outside the page box was dropped");
        continue;
      }
      cell.bbox = BoundingBox::make(std::max(cell.bbox.l, 0.0), std::max(cell.bbox.t, 0.0),
                                    std::min(cell.bbox.r, page_.width),
                                    std::min(cell.bbox.b, page_.height));
      cell.stream_index = static_cast<int>(kept.size());
      kept.push_back(std::move(cell));
    }
    result_.cells = std::move(kept);

    std::vector<BoundingBox> regions;
    for (const BoundingBox& r : result_.bitmap_regions) {
      if (intersection_area(r, page_box) <= 0.0) continue;
      regions.push_back(BoundingBox::make(std::max(r.l, 0.0), std::max(r.t, 0.0),
                                          std::min(r.r, page_.width),
                                          std::min(r.b, page_.height)));
    }
    result_.bitmap_regions = std::move(regions);
  }

  // --- text showing --------------------------------------------------------

  void show_string(const std::string& bytes) {
    if (!state_.font) {
      warn_once(no_font_warned_, "text shown before Tf; skipped");
      return;
    }
    if (state_.font->kind == Font::Kind::Type3) {
      warn_once(type3_warned_, "Type3 font glyphs skipped");
      return;
    }
    if (!in_text_) warn_once(outside_bt_warned_, "text-showing operator outside BT/ET");

    const Font& font = *state_.font;
    const Matrix device = mat_mul(tm_, state_.ctm);
    const bool axis_aligned =
        std::abs(device[1]) < 1e-9 && std::abs(device[2]) < 1e-9 && device[0] > 0;

    const double x_scale = std::hypot(device[0], device[1]);
    const double y_scale = std::hypot(device[2], device[3]);
    const double size_dev = state_.font_size * y_scale;

    for (const DecodedGlyph& glyph : decode_string(font, bytes)) {
      if (glyph.unmapped)
        warn_once(unmapped_warned_, "unmappable character code in font " + font.resource_name +
                                        "; emitted U+FFFD");
      if (glyph.width_fallback)
        warn_once(fallback_width_warned_,
                  "no metrics for font " + font.resource_name + "; using 500/1000 em");

      // Pen origin in device space (text-space x cursor folds into tm_).
      double ox = 0.0, oy = 0.0;
      mat_apply(mat_mul(tm_, state_.ctm), 0.0, 0.0, ox, oy);

      const double ink_tx = glyph.width / 1000.0 * state_.font_size * state_.h_scale;
      const double advance_tx =
          (glyph.width / 1000.0 * state_.font_size + state_.char_spacing +
           (glyph.is_word_space ? state_.word_spacing : 0.0)) *
          state_.h_scale;

      if (axis_aligned) {
        const double ink_end = ox + ink_tx * x_scale;
        const bool same_line = cell_.active && !cell_.rotated &&
                               std::abs(oy - cell_.baseline) <= kBaselineEps;
        const bool same_font = cell_.active && cell_.font_name == font.base_font &&
                               std::abs(cell_.size_dev - size_dev) < 1e-6;
        const double gap = cell_.active ? ox - cell_.pen_end : 0.0;
        const bool gap_ok = std::abs(gap) <= split_gap_em_ * size_dev;

        if (!cell_.active || !same_line || !same_font || !gap_ok) {
          flush_cell();
          cell_.active = true;
          cell_.rotated = false;
          cell_.text.clear();
          cell_.start_x = cell_.min_x = ox;
          cell_.max_x = ink_end;
          cell_.baseline = oy;
          cell_.size_dev = size_dev;
          cell_.ascent = font.ascent;
          cell_.descent = font.descent;
          cell_.font_name = font.base_font.empty() ? font.resource_name : font.base_font;
        }
        cell_.text += glyph.text;
        cell_.min_x = std::min(cell_.min_x, ox);
        cell_.max_x = std::max(cell_.max_x, ink_end);
        cell_.pen_end = ink_end;
      } else {
        // Rotated or skewed: hull of the glyph quad, one cell per show op.
        double corners[4][2];
        const Matrix m = mat_mul(tm_, state_.ctm);
        const double asc = font.ascent * state_.font_size;
        const double desc = font.descent * state_.font_size;
        mat_apply(m, 0.0, desc, corners[0][0], corners[0][1]);
        mat_apply(m, 0.0, asc, corners[1][0], corners[1][1]);
        mat_apply(m, ink_tx, desc, corners[2][0], corners[2][1]);
        mat_apply(m, ink_tx, asc, corners[3][0], corners[3][1]);

        if (!cell_.active || !cell_.rotated || !rotated_run_open_) {
          flush_cell();
          cell_.active = true;
          cell_.rotated = true;
          cell_.text.clear();
          cell_.min_x = cell_.max_x = corners[0][0];
          cell_.min_y = cell_.max_y = corners[0][1];
          cell_.size_dev = size_dev;
          cell_.font_name = font.base_font.empty() ? font.resource_name : font.base_font;
          rotated_run_open_ = true;
          warn_once(rotated_warned_, "rotated text emitted with axis-aligned bounds");
        }
        for (auto& corner : corners) {
          cell_.min_x = std::min(cell_.min_x, corner[0]);
          cell_.max_x = std::max(cell_.max_x, corner[0]);
          cell_.min_y = std::min(cell_.min_y, corner[1]);
          cell_.max_y = std::max(cell_.max_y, corner[1]);
        }
        cell_.text += glyph.text;
      }

      // Advance the text matrix by the glyph displacement.
      tm_ = mat_mul(Matrix{1, 0, 0, 1, advance_tx, 0}, tm_);
    }
    rotated_run_open_ = false;
  }

  // --- operator dispatch ---------------------------------------------------

  void execute(const std::vector<std::uint8_t>& content, const PreparedResources* resources,
               int depth) {
    Tokenizer tok(content);
    std::vector<PdfObject> stack;

    auto number = [&](std::size_t from_end) -> double {
      const std::size_t i = stack.size() - 1 - from_end;
      return stack[i].is_number() ? stack[i].as_double() : 0.0;
    };
    auto have_numbers = [&](std::size_t n) {
      if (stack.size() < n) return false;
      for (std::size_t i = stack.size() - n; i < stack.size(); ++i)
        if (!stack[i].is_number()) return false;
      return true;
    };

    while (!tok.eof()) {
      tok.skip_space();
      if (tok.eof()) break;
      const std::uint8_t c = tok.data()[tok.pos()];

      if (c == '/' || c == '(' || c == '<' || c == '[' || c == '+' || c == '-' || c == '.' ||
          std::isdigit(c)) {
        try {
          stack.push_back(tok.parse_object(0));
        } catch (const ParseFailure& e) {
          warn_once(operand_warned_, std::string("malformed operand skipped: ") + e.what());
          tok.seek(tok.pos() + 1);
        }
        continue;
      }

      std::string op = tok.peek_keyword();
      if (op.empty()) {
        tok.seek(tok.pos() + 1);
        continue;
      }
      tok.accept_keyword(op);

      if (op == "BT") {
        tm_ = kIdentity;
        tlm_ = kIdentity;
        in_text_ = true;
      } else if (op == "ET") {
        in_text_ = false;
      } else if (op == "Tm") {
        if (have_numbers(6)) {
          tlm_ = Matrix{number(5), number(4), number(3), number(2), number(1), number(0)};
          tm_ = tlm_;
        } else {
          warn_malformed(op);
        }
      } else if (op == "Td") {
        if (have_numbers(2)) move_line(number(1), number(0));
        else warn_malformed(op);
      } else if (op == "TD") {
        if (have_numbers(2)) {
          state_.leading = -number(0);
          move_line(number(1), number(0));
        } else {
          warn_malformed(op);
        }
      } else if (op == "T*") {
        move_line(0.0, -state_.leading);
      } else if (op == "TL") {
        if (have_numbers(1)) state_.leading = number(0);
        else warn_malformed(op);
      } else if (op == "Tc") {
        if (have_numbers(1)) state_.char_spacing = number(0);
        else warn_malformed(op);
      } else if (op == "Tw") {
        if (have_numbers(1)) state_.word_spacing = number(0);
        else warn_malformed(op);
      } else if (op == "Tz") {
        if (have_numbers(1)) state_.h_scale = number(0) / 100.0;
        else warn_malformed(op);
      } else if (op == "Tf") {
        if (stack.size() >= 2 && stack[stack.size() - 2].is_name() &&
            stack.back().is_number()) {
          const std::string& name = stack[stack.size() - 2].name();
          state_.font_size = stack.back().as_double();
          state_.font = nullptr;
          if (resources) {
            if (auto it = resources->fonts.find(name); it != resources->fonts.end())
              state_.font = it->second;
          }
          if (!state_.font)
            warn_once(missing_font_warned_, "font resource /" + name + " not found");
        } else {
          warn_malformed(op);
        }
      } else if (op == "Tj") {
        if (!stack.empty() && stack.back().is_string()) show_string(stack.back().string_bytes());
        else warn_malformed(op);
      } else if (op == "'") {
        if (!stack.empty() && stack.back().is_string()) {
          move_line(0.0, -state_.leading);
          show_string(stack.back().string_bytes());
        } else {
          warn_malformed(op);
        }
      } else if (op == "\"") {
        // operands: aw ac string
        if (stack.size() >= 3 && stack.back().is_string() &&
            stack[stack.size() - 3].is_number() && stack[stack.size() - 2].is_number()) {
          state_.word_spacing = stack[stack.size() - 3].as_double();
          state_.char_spacing = stack[stack.size() - 2].as_double();
          move_line(0.0, -state_.leading);
          show_string(stack.back().string_bytes());
        } else {
          warn_malformed(op);
        }
      } else if (op == "TJ") {
        if (!stack.empty() && stack.back().is_array()) {
          for (const PdfObject& entry : stack.back().array()) {
            if (entry.is_string()) {
              show_string(entry.string_bytes());
            } else if (entry.is_number()) {
              const double shift =
                  -entry.as_double() / 1000.0 * state_.font_size * state_.h_scale;
              tm_ = mat_mul(Matrix{1, 0, 0, 1, shift, 0}, tm_);
            }
          }
        } else {
          warn_malformed(op);
        }
      } else if (op == "cm") {
        if (have_numbers(6)) {
          state_.ctm = mat_mul(
              Matrix{number(5), number(4), number(3), number(2), number(1), number(0)},
              state_.ctm);
        } else {
          warn_malformed(op);
        }
      } else if (op == "q") {
        saved_.push_back(state_);
      } else if (op == "Q") {
        if (!saved_.empty()) {
          state_ = saved_.back();
          saved_.pop_back();
        }
      } else if (op == "Do") {
        if (!stack.empty() && stack.back().is_name() && resources) {
          do_xobject(stack.back().name(), *resources, depth);
        }
      } else if (op == "BI") {
        skip_inline_image(tok);
      }
      // Everything else: drawing operators we do not track.

      stack.clear();
    }
  }

  void move_line(double tx, double ty) {
    tlm_ = mat_mul(Matrix{1, 0, 0, 1, tx, ty}, tlm_);
    tm_ = tlm_;
  }

  void do_xobject(const std::string& name, const PreparedResources& resources, int depth) {
    auto it = resources.xobjects.find(name);
    if (it == resources.xobjects.end()) {
      warn_once(missing_xobj_warned_, "XObject resource /" + name + " not found");
      return;
    }
    const PreparedResources::XObj& xobj = it->second;
    if (xobj.kind == PreparedResources::XObj::Kind::Image) {
      record_image_region(state_.ctm);
    } else if (xobj.kind == PreparedResources::XObj::Kind::Form) {
      if (depth >= kMaxFormDepth) {
        warn_once(form_depth_warned_, "form XObject nesting too deep; skipped");
        return;
      }
      saved_.push_back(state_);
      state_.ctm = mat_mul(xobj.matrix, state_.ctm);
      execute(xobj.content, xobj.resources ? xobj.resources.get() : nullptr, depth + 1);
      state_ = saved_.back();
      saved_.pop_back();
    }
  }

  void record_image_region(const Matrix& ctm) {
    double xs[4], ys[4];
    mat_apply(ctm, 0, 0, xs[0], ys[0]);
    mat_apply(ctm, 1, 0, xs[1], ys[1]);
    mat_apply(ctm, 0, 1, xs[2], ys[2]);
    mat_apply(ctm, 1, 1, xs[3], ys[3]);
    double min_x = xs[0], max_x = xs[0], min_y = ys[0], max_y = ys[0];
    for (int i = 1; i < 4; ++i) {
      min_x = std::min(min_x, xs[i]);
      max_x = std::max(max_x, xs[i]);
      min_y = std::min(min_y, ys[i]);
      max_y = std::max(max_y, ys[i]);
    }
    result_.bitmap_regions.push_back(BoundingBox::make(min_x, min_y, max_x, max_y));
  }

  void skip_inline_image(Tokenizer& tok) {
    // BI <pairs> ID <binary> EI — record the placement, skip the payload.
    record_image_region(state_.ctm);
    const auto& data = tok.data();
    std::size_t p = tok.pos();
    while (p + 2 < data.size()) {
      if (data[p] == 'I' && data[p + 1] == 'D') { p += 2; break; }
      ++p;
    }
    while (p + 2 < data.size()) {
      if (is_pdf_whitespace(data[p]) && data[p + 1] == 'E' && data[p + 2] == 'I') {
        const std::size_t after = p + 3;
        if (after >= data.size() || is_pdf_whitespace(data[after]) ||
            is_pdf_delimiter(data[after])) {
          tok.seek(after);
          return;
        }
      }
      ++p;
    }
    tok.seek(data.size());
    warn_once(inline_image_warned_, "unterminated inline image");
  }

  void warn_malformed(const std::string& op) {
    warn_once(operand_warned_, "malformed operands for operator " + op + "; skipped");
  }

  void warn_once(bool& flag, std::string message) {
    if (flag) return;
    flag = true;
    result_.warnings.push_back("page " + std::to_string(page_.page_no) + ": " +
                               std::move(message));
  }

  const PreparedPage& page_;
  double split_gap_em_;

  GraphicsState state_;
  std::vector<GraphicsState> saved_;
  Matrix tm_ = kIdentity;
  Matrix tlm_ = kIdentity;
  bool in_text_ = false;
  bool rotated_run_open_ = false;

  PendingCell cell_;
  ExtractionResult result_;

  bool no_font_warned_ = false;
  bool missing_font_warned_ = false;
  bool missing_xobj_warned_ = false;
  bool type3_warned_ = false;
  bool unmapped_warned_ = false;
  bool fallback_width_warned_ = false;
  bool outside_bt_warned_ = false;
  bool operand_warned_ = false;
  bool rotated_warned_ = false;
  bool rotated_page_warned_ = false;
  bool form_depth_warned_ = false;
  bool inline_image_warned_ = false;
  bool offpage_warned_ = false;
};

}  // namespace

ExtractionResult extract_cells(const PreparedPage& page, double cell_split_gap_em) {
  Interpreter interp(page, cell_split_gap_em);
  return interp.run();
}

}  // namespace docforge::pdf
