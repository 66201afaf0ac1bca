#include "docforge/testing/pdf_generator.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>

#include "docforge/pdf/filters.hpp"
#include "docforge/pdf/fonts.hpp"

namespace docforge::pdfgen {

namespace {

std::string num(double v) {
  if (v == static_cast<long long>(v)) return std::to_string(static_cast<long long>(v));
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  std::string s(buf);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

std::string ref(int obj) { return std::to_string(obj) + " 0 R"; }

std::string escape_literal(const std::string& bytes) {
  std::string out;
  out.reserve(bytes.size() + 8);
  for (unsigned char c : bytes) {
    if (c == '(' || c == ')' || c == '\\') {
      out.push_back('\\');
      out.push_back(static_cast<char>(c));
    } else if (c < 0x20 || c > 0x7E) {
      char buf[8];
      std::snprintf(buf, sizeof(buf), "\\%03o", c);
      out += buf;
    } else {
      out.push_back(static_cast<char>(c));
    }
  }
  return out;
}

std::vector<std::uint8_t> to_bytes(const std::string& s) {
  return {s.begin(), s.end()};
}

std::string winansi_to_utf8(const std::string& bytes) {
  const auto& table = pdf::base_encoding_table(pdf::BaseEncodingId::WinAnsi);
  std::string out;
  for (unsigned char c : bytes) {
    char32_t cp = table[c];
    pdf::append_utf8(out, cp == 0 ? 0xFFFD : cp);
  }
  return out;
}

}  // namespace

// --- PdfBuilder --------------------------------------------------------------

int PdfBuilder::add_object(std::string body) {
  objects_.push_back(Obj{std::move(body), true});
  return static_cast<int>(objects_.size());
}

int PdfBuilder::reserve_object() {
  objects_.push_back(Obj{"null", true});
  return static_cast<int>(objects_.size());
}

void PdfBuilder::set_object(int number, std::string body) {
  objects_.at(static_cast<std::size_t>(number) - 1).body = std::move(body);
}

int PdfBuilder::add_stream(std::string dict_entries, std::vector<std::uint8_t> data,
                           bool flate, bool ascii_hex) {
  std::string filter;
  if (flate) {
    data = pdf::flate_encode(data);
    filter = " /Filter /FlateDecode";
  } else if (ascii_hex) {
    static const char* kHex = "0123456789abcdef";
    std::string encoded;
    encoded.reserve(data.size() * 2 + 1);
    for (std::uint8_t b : data) {
      encoded.push_back(kHex[b >> 4]);
      encoded.push_back(kHex[b & 0xF]);
    }
    encoded.push_back('>');
    data = to_bytes(encoded);
    filter = " /Filter /ASCIIHexDecode";
  }
  std::string body = "<< " + dict_entries + filter +
                     " /Length " + std::to_string(data.size()) + " >>\nstream\n";
  body.append(reinterpret_cast<const char*>(data.data()), data.size());
  body += "\nendstream";
  objects_.push_back(Obj{std::move(body), false});
  return static_cast<int>(objects_.size());
}

std::vector<std::uint8_t> PdfBuilder::build(XrefFlavor flavor, int root,
                                            const std::string& extra_trailer_entries) {
  std::string out = "%PDF-1.7\n%\xE2\xE3\xCF\xD3\n";
  const int n = static_cast<int>(objects_.size());

  auto write_obj = [&out](int number, const std::string& body) -> std::size_t {
    const std::size_t offset = out.size();
    out += std::to_string(number) + " 0 obj\n" + body + "\nendobj\n";
    return offset;
  };

  if (flavor == XrefFlavor::Classic) {
    std::vector<std::size_t> offsets(n + 1, 0);
    for (int i = 0; i < n; ++i) offsets[i + 1] = write_obj(i + 1, objects_[i].body);

    const std::size_t xref_pos = out.size();
    out += "xref\n0 " + std::to_string(n + 1) + "\n";
    out += "0000000000 65535 f \n";
    char line[32];
    for (int i = 1; i <= n; ++i) {
      std::snprintf(line, sizeof(line), "%010zu 00000 n \n", offsets[i]);
      out += line;
    }
    out += "trailer\n<< /Size " + std::to_string(n + 1) + " /Root " + ref(root) +
           extra_trailer_entries + " >>\nstartxref\n" + std::to_string(xref_pos) + "\n%%EOF\n";
    return to_bytes(out);
  }

  if (flavor == XrefFlavor::Stream) {
    std::vector<std::size_t> offsets(n + 1, 0);
    for (int i = 0; i < n; ++i) offsets[i + 1] = write_obj(i + 1, objects_[i].body);

    const int xref_num = n + 1;
    const std::size_t xref_pos = out.size();

    // Rows: [type:1][offset:4][field3:2], PNG Up predictor applied.
    const int row_len = 7;
    std::vector<std::uint8_t> rows;
    auto push_row = [&rows](std::uint8_t type, std::uint64_t f2, std::uint16_t f3) {
      rows.push_back(type);
      for (int shift = 24; shift >= 0; shift -= 8)
        rows.push_back(static_cast<std::uint8_t>((f2 >> shift) & 0xFF));
      rows.push_back(static_cast<std::uint8_t>(f3 >> 8));
      rows.push_back(static_cast<std::uint8_t>(f3 & 0xFF));
    };
    push_row(0, 0, 0xFFFF);
    for (int i = 1; i <= n; ++i) push_row(1, offsets[i], 0);
    push_row(1, xref_pos, 0);  // the xref stream itself

    std::vector<std::uint8_t> filtered;
    std::vector<std::uint8_t> prev(row_len, 0);
    for (std::size_t at = 0; at < rows.size(); at += row_len) {
      filtered.push_back(2);  // Up
      for (int i = 0; i < row_len; ++i) {
        const std::uint8_t cur = rows[at + i];
        filtered.push_back(static_cast<std::uint8_t>(cur - prev[i]));
        prev[i] = cur;
      }
    }
    std::vector<std::uint8_t> data = pdf::flate_encode(filtered);

    std::string dict = "<< /Type /XRef /Size " + std::to_string(n + 2) +
                       " /W [1 4 2] /Root " + ref(root) + extra_trailer_entries +
                       " /Filter /FlateDecode /DecodeParms << /Predictor 12 /Colors 1"
                       " /BitsPerComponent 8 /Columns 7 >> /Length " +
                       std::to_string(data.size()) + " >>\nstream\n";
    std::string body = dict;
    body.append(reinterpret_cast<const char*>(data.data()), data.size());
    body += "\nendstream";
    write_obj(xref_num, body);

    out += "startxref\n" + std::to_string(xref_pos) + "\n%%EOF\n";
    return to_bytes(out);
  }

  // ObjectStreams: packable objects move into a compressed /ObjStm.
  std::vector<int> packed;
  for (int i = 0; i < n; ++i)
    if (objects_[i].packable) packed.push_back(i + 1);

  const int objstm_num = n + 1;
  const int xref_num = n + 2;

  std::string header;
  std::string bodies;
  std::vector<int> packed_index(n + 1, -1);
  for (std::size_t k = 0; k < packed.size(); ++k) {
    const int number = packed[k];
    header += std::to_string(number) + " " + std::to_string(bodies.size()) + " ";
    bodies += objects_[static_cast<std::size_t>(number) - 1].body + "\n";
    packed_index[number] = static_cast<int>(k);
  }

  std::vector<std::size_t> offsets(n + 3, 0);
  for (int i = 0; i < n; ++i) {
    if (!objects_[i].packable) offsets[i + 1] = write_obj(i + 1, objects_[i].body);
  }

  offsets[objstm_num] = out.size();
  {
    std::vector<std::uint8_t> data = to_bytes(header + bodies);
    std::vector<std::uint8_t> compressed = pdf::flate_encode(data);
    std::string body = "<< /Type /ObjStm /N " + std::to_string(packed.size()) + " /First " +
                       std::to_string(header.size()) + " /Filter /FlateDecode /Length " +
                       std::to_string(compressed.size()) + " >>\nstream\n";
    body.append(reinterpret_cast<const char*>(compressed.data()), compressed.size());
    body += "\nendstream";
    write_obj(objstm_num, body);
  }

  const std::size_t xref_pos = out.size();
  std::vector<std::uint8_t> rows;
  auto push_row = [&rows](std::uint8_t type, std::uint64_t f2, std::uint16_t f3) {
    rows.push_back(type);
    for (int shift = 24; shift >= 0; shift -= 8)
      rows.push_back(static_cast<std::uint8_t>((f2 >> shift) & 0xFF));
    rows.push_back(static_cast<std::uint8_t>(f3 >> 8));
    rows.push_back(static_cast<std::uint8_t>(f3 & 0xFF));
  };
  push_row(0, 0, 0xFFFF);
  for (int i = 1; i <= n; ++i) {
    if (packed_index[i] >= 0)
      push_row(2, static_cast<std::uint64_t>(objstm_num),
               static_cast<std::uint16_t>(packed_index[i]));
    else
      push_row(1, offsets[i], 0);
  }
  push_row(1, offsets[objstm_num], 0);
  push_row(1, xref_pos, 0);

  std::string dict = "<< /Type /XRef /Size " + std::to_string(n + 3) + " /W [1 4 2] /Root " +
                     ref(root) + extra_trailer_entries + " /Length " +
                     std::to_string(rows.size()) + " >>\nstream\n";
  std::string body = dict;
  body.append(reinterpret_cast<const char*>(rows.data()), rows.size());
  body += "\nendstream";
  write_obj(xref_num, body);

  out += "startxref\n" + std::to_string(xref_pos) + "\n%%EOF\n";
  return to_bytes(out);
}

// --- PageComposer -------------------------------------------------------------

void PageComposer::use_font(const std::string& resource, const std::string& base_font,
                            double size) {
  font_resource_ = resource;
  base_font_ = base_font;
  font_kind_ = 0;
  font_size_ = size;
}

void PageComposer::use_custom_font(const std::string& resource, double size) {
  font_resource_ = resource;
  base_font_ = "SynthSans";
  font_kind_ = 1;
  font_size_ = size;
}

void PageComposer::use_cid_font(const std::string& resource, double size) {
  font_resource_ = resource;
  base_font_ = "SynthCID";
  font_kind_ = 2;
  font_size_ = size;
}

double PageComposer::glyph_width(unsigned char code) const {
  switch (font_kind_) {
    case 1: return custom_width_formula(code);
    case 2: return cid_width_formula(code);
    default: {
      const auto& table = pdf::base_encoding_table(pdf::BaseEncodingId::WinAnsi);
      const char32_t cp = table[code] == 0 ? 0xFFFD : table[code];
      const double w = pdf::standard14_width(base_font_, cp);
      return w >= 0.0 ? w : 500.0;  // mirror the parser's documented fallback
    }
  }
}

double PageComposer::measure(const std::string& ascii) const {
  double units = 0.0;
  for (unsigned char c : ascii) units += glyph_width(c);
  return units / 1000.0 * font_size_;
}

void PageComposer::emit_cells(double x, double baseline_y, const std::vector<TjSeg>& segs,
                              bool cid) {
  double pen = x;
  bool active = false;
  double cell_start = 0.0, ink_end = 0.0;
  std::string text;

  auto flush = [&]() {
    if (!active) return;
    active = false;
    const bool blank = text.find_first_not_of(' ') == std::string::npos;
    if (text.empty() || blank) return;
    GtCell cell;
    cell.text = cid ? text : winansi_to_utf8(text);
    cell.l = cell_start;
    cell.t = height_ - baseline_y - 0.8 * font_size_;
    cell.font_size = font_size_;
    cells_.push_back(std::move(cell));
    text.clear();
  };

  for (const TjSeg& seg : segs) {
    if (!seg.text.empty()) {
      const double gap = active ? pen - ink_end : 0.0;
      if (active && std::abs(gap) > split_gap_em_ * font_size_) flush();
      if (!active) {
        active = true;
        cell_start = pen;
        text.clear();
      }
      text += seg.text;
      pen += measure(seg.text);
      ink_end = pen;
    }
    pen -= seg.adjust_after / 1000.0 * font_size_;
  }
  flush();
}

void PageComposer::text_at(double x, double baseline_y, const std::string& ascii) {
  ops_ += "BT /" + font_resource_ + " " + num(font_size_) + " Tf " + num(x) + " " +
          num(baseline_y) + " Td (" + escape_literal(ascii) + ") Tj ET\n";
  emit_cells(x, baseline_y, {TjSeg{ascii, 0.0}}, false);
}

void PageComposer::tj_at(double x, double baseline_y, const std::vector<TjSeg>& segs) {
  ops_ += "BT /" + font_resource_ + " " + num(font_size_) + " Tf " + num(x) + " " +
          num(baseline_y) + " Td [ ";
  for (const TjSeg& seg : segs) {
    if (!seg.text.empty()) ops_ += "(" + escape_literal(seg.text) + ") ";
    if (seg.adjust_after != 0.0) ops_ += num(seg.adjust_after) + " ";
  }
  ops_ += "] TJ ET\n";
  emit_cells(x, baseline_y, segs, false);
}

void PageComposer::cid_text_at(double x, double baseline_y, const std::string& ascii) {
  static const char* kHex = "0123456789abcdef";
  std::string hex;
  for (unsigned char c : ascii) {
    hex.push_back('0');
    hex.push_back('0');
    hex.push_back(kHex[c >> 4]);
    hex.push_back(kHex[c & 0xF]);
  }
  ops_ += "BT /" + font_resource_ + " " + num(font_size_) + " Tf " + num(x) + " " +
          num(baseline_y) + " Td <" + hex + "> Tj ET\n";
  emit_cells(x, baseline_y, {TjSeg{ascii, 0.0}}, true);
}

void PageComposer::image_at(double x, double y, double w, double h,
                            const std::string& resource) {
  ops_ += "q " + num(w) + " 0 0 " + num(h) + " " + num(x) + " " + num(y) + " cm /" +
          resource + " Do Q\n";
  image_regions_.push_back(
      BoundingBox::make(x, height_ - y - h, x + w, height_ - y));
}

// --- shared fixture plumbing ---------------------------------------------------

namespace {

struct FontSet {
  bool helvetica = false;
  bool courier = false;
  bool custom = false;
  bool cid = false;
};

std::string custom_widths_array() {
  std::string out = "[ ";
  for (int code = 32; code <= 126; ++code)
    out += num(PageComposer::custom_width_formula(static_cast<unsigned char>(code))) + " ";
  out += "]";
  return out;
}

std::string cid_w_array() {
  // Mixed forms: per-cid `c [w]` pairs for 32..59, `c1 c2 w` ranges beyond
  // (cid widths repeat with period 5, so ranges of one width are emitted).
  std::string out = "[ ";
  for (int c = 32; c < 60; ++c)
    out += std::to_string(c) + " [ " + num(PageComposer::cid_width_formula(c)) + " ] ";
  for (int c = 60; c <= 126; ++c)
    out += std::to_string(c) + " " + std::to_string(c) + " " +
           num(PageComposer::cid_width_formula(c)) + " ";
  out += "]";
  return out;
}

std::string register_fonts(PdfBuilder& b, const FontSet& set, bool flate) {
  std::string entries;
  if (set.helvetica) {
    int f = b.add_object(
        "<< /Type /Font /Subtype /Type1 /BaseFont /Helvetica /Encoding /WinAnsiEncoding >>");
    entries += "/F1 " + ref(f) + " ";
  }
  if (set.courier) {
    int f = b.add_object(
        "<< /Type /Font /Subtype /Type1 /BaseFont /Courier /Encoding /WinAnsiEncoding >>");
    entries += "/F2 " + ref(f) + " ";
  }
  if (set.custom) {
    int widths = b.add_object(custom_widths_array());
    int f = b.add_object(
        "<< /Type /Font /Subtype /TrueType /BaseFont /SynthSans /FirstChar 32 /LastChar 126"
        " /Widths " + ref(widths) + " /Encoding /WinAnsiEncoding >>");
    entries += "/F3 " + ref(f) + " ";
  }
  if (set.cid) {
    std::string cmap =
        "/CIDInit /ProcSet findresource begin\n"
        "12 dict begin\n"
        "begincmap\n"
        "1 begincodespacerange\n<0000> <ffff>\nendcodespacerange\n"
        "2 beginbfchar\n<0020> <0020>\n<0021> <0021>\nendbfchar\n"
        "1 beginbfrange\n<0022> <007e> <0022>\nendbfrange\n"
        "endcmap\nend end\n";
    int tounicode = b.add_stream("", to_bytes(cmap), flate);
    int descendant = b.add_object(
        "<< /Type /Font /Subtype /CIDFontType2 /BaseFont /SynthCID /CIDSystemInfo"
        " << /Registry (Adobe) /Ordering (Identity) /Supplement 0 >> /DW 1000 /W " +
        cid_w_array() + " >>");
    int f = b.add_object(
        "<< /Type /Font /Subtype /Type0 /BaseFont /SynthCID /Encoding /Identity-H"
        " /DescendantFonts [ " + ref(descendant) + " ] /ToUnicode " + ref(tounicode) + " >>");
    entries += "/F4 " + ref(f) + " ";
  }
  return entries;
}

int add_gray_image(PdfBuilder& b) {
  std::vector<std::uint8_t> pixels(16, 0x80);
  return b.add_stream(
      "/Type /XObject /Subtype /Image /Width 4 /Height 4 /ColorSpace /DeviceGray"
      " /BitsPerComponent 8", std::move(pixels), false);
}

std::string page_body(int pages_obj, double w, double h, const std::string& font_entries,
                      const std::string& xobject_entries, int content_obj) {
  std::string resources = "<< /Font << " + font_entries + ">> ";
  if (!xobject_entries.empty()) resources += "/XObject << " + xobject_entries + ">> ";
  resources += ">>";
  return "<< /Type /Page /Parent " + ref(pages_obj) + " /MediaBox [0 0 " + num(w) + " " +
         num(h) + "] /Resources " + resources + " /Contents " + ref(content_obj) + " >>";
}

std::string pages_body(const std::vector<int>& kids) {
  std::string body = "<< /Type /Pages /Kids [ ";
  for (int kid : kids) body += ref(kid) + " ";
  body += "] /Count " + std::to_string(kids.size()) + " >>";
  return body;
}

GeneratedPdf finish_single_page(PdfBuilder& b, PageComposer& composer,
                                const std::string& font_entries,
                                const std::string& xobject_entries, XrefFlavor flavor,
                                bool flate, const std::string& name) {
  int content = b.add_stream("", to_bytes(composer.content()), flate);
  int pages = b.reserve_object();
  int page = b.add_object(page_body(pages, composer.width(), composer.height(), font_entries,
                                    xobject_entries, content));
  b.set_object(pages, pages_body({page}));
  int catalog = b.add_object("<< /Type /Catalog /Pages " + ref(pages) + " >>");

  GeneratedPdf out;
  out.name = name;
  out.pages = 1;
  out.cells = composer.take_cells();
  for (GtCell& cell : out.cells) cell.page_no = 1;
  out.bytes = b.build(flavor, catalog);
  return out;
}

}  // namespace

// --- fixtures -----------------------------------------------------------------

namespace {

const char* kWords[] = {"alpha",  "bravo", "charlie", "delta", "echo",   "foxtrot",
                        "golf",   "hotel", "india",   "juliet", "kilo",  "lima",
                        "mike",   "nova",  "oscar",   "papa",  "quebec", "romeo",
                        "sierra", "tango"};

std::string random_line(std::mt19937& rng, int min_words, int max_words) {
  std::uniform_int_distribution<int> count(min_words, max_words);
  std::uniform_int_distribution<int> pick(0, 19);
  std::string out;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += kWords[pick(rng)];
  }
  return out;
}

std::string fit_line(std::mt19937& rng, const PageComposer& composer, double max_width) {
  std::uniform_int_distribution<int> pick(0, 19);
  std::string out = kWords[pick(rng)];
  while (true) {
    std::string next = out + ' ' + kWords[pick(rng)];
    if (composer.measure(next) > max_width) break;
    out = std::move(next);
  }
  return out;
}

void add_region(GeneratedPdf& out, int page, const std::string& label, double l, double t,
                double r, double b) {
  out.regions.push_back(GtRegion{page, label, BoundingBox::make(l, t, r, b)});
}

}  // namespace

GeneratedPdf make_paragraph_page(std::uint32_t seed, XrefFlavor flavor, bool compress) {
  std::mt19937 rng(seed);
  PdfBuilder b;
  PageComposer composer(612, 792);
  composer.use_font("F1", "Helvetica", 10);

  GeneratedPdf gt;
  double y = 720;
  std::uniform_int_distribution<int> para_count(2, 4);
  std::uniform_int_distribution<int> line_count(2, 5);
  const int paragraphs = para_count(rng);
  for (int p = 0; p < paragraphs && y > 80; ++p) {
    const int lines = line_count(rng);
    const double top = 792 - y - 8;
    double max_r = 72;
    for (int i = 0; i < lines && y > 80; ++i) {
      std::string line = fit_line(rng, composer, 430);
      max_r = std::max(max_r, 72 + composer.measure(line));
      composer.text_at(72, y, line);
      y -= 14;  // leading
    }
    add_region(gt, 1, "text", 72, top, max_r, 792 - (y + 14) + 2.8);
    y -= 24;  // paragraph gap
  }

  GeneratedPdf out = finish_single_page(b, composer, register_fonts(b, {.helvetica = true},
                                                                    compress),
                                        "", flavor, compress, "paragraphs");
  out.regions = std::move(gt.regions);
  return out;
}

GeneratedPdf make_two_column_page(std::uint32_t seed, XrefFlavor flavor) {
  std::mt19937 rng(seed);
  PdfBuilder b;
  PageComposer composer(612, 792);
  composer.use_font("F1", "Helvetica", 10);

  GeneratedPdf gt;
  const double col1_x = 72, col2_x = 306, max_text = 195;
  double y = 700;
  for (int i = 0; i < 18; ++i) {
    composer.text_at(col1_x, y, fit_line(rng, composer, max_text));
    composer.text_at(col2_x, y, fit_line(rng, composer, max_text));
    y -= 14;
  }
  add_region(gt, 1, "text", col1_x, 792 - 700 - 8, col1_x + max_text, 792 - (y + 14) + 2.8);
  add_region(gt, 1, "text", col2_x, 792 - 700 - 8, col2_x + max_text, 792 - (y + 14) + 2.8);

  GeneratedPdf out = finish_single_page(b, composer,
                                        register_fonts(b, {.helvetica = true}, false), "",
                                        flavor, false, "two-column");
  out.regions = std::move(gt.regions);
  out.gutter_l = 270;
  out.gutter_r = 306;
  return out;
}

GeneratedPdf make_kerning_page(std::uint32_t seed, XrefFlavor flavor) {
  std::mt19937 rng(seed);
  PdfBuilder b;
  PageComposer composer(612, 792);
  composer.use_font("F1", "Helvetica", 10);

  composer.tj_at(72, 700, {TjSeg{"A", -2000}, TjSeg{"B", 0}});
  composer.tj_at(72, 680, {TjSeg{"AV", -120}, TjSeg{"ATAR", 0}});
  composer.tj_at(72, 660, {TjSeg{"left", -3000}, TjSeg{"right", 0}});
  composer.tj_at(72, 640, {TjSeg{"neg", 1500}, TjSeg{"ative", 0}});
  std::uniform_int_distribution<int> kern(-240, 240);
  composer.tj_at(72, 620,
                 {TjSeg{"seeded", static_cast<double>(kern(rng))}, TjSeg{"kerning", 0}});

  composer.use_font("F2", "Courier", 12);
  composer.text_at(72, 580, "fixed pitch line");

  composer.use_custom_font("F3", 11);
  composer.text_at(72, 550, random_line(rng, 3, 6));
  composer.tj_at(72, 530, {TjSeg{"wide", -2500}, TjSeg{"jump", 0}});

  return finish_single_page(
      b, composer,
      register_fonts(b, {.helvetica = true, .courier = true, .custom = true}, false), "",
      flavor, false, "kerning");
}

GeneratedPdf make_identity_h_page(std::uint32_t seed, XrefFlavor flavor) {
  std::mt19937 rng(seed);
  PdfBuilder b;
  PageComposer composer(612, 792);
  composer.use_cid_font("F4", 12);

  double y = 700;
  for (int i = 0; i < 6; ++i) {
    composer.cid_text_at(72, y, random_line(rng, 2, 5));
    y -= 16;
  }
  composer.cid_text_at(72, y - 10, "!mixed widths!");

  return finish_single_page(b, composer, register_fonts(b, {.cid = true}, true), "", flavor,
                            true, "identity-h");
}

GeneratedPdf make_article_page(std::uint32_t seed, XrefFlavor flavor, bool compress) {
  std::mt19937 rng(seed);
  PdfBuilder b;
  PageComposer composer(612, 792);
  GeneratedPdf gt;

  composer.use_font("F1", "Helvetica", 9);
  composer.text_at(72, 778, "Journal of Synthetic Documents");
  add_region(gt, 1, "page-header", 72, 792 - 778 - 7.2, 230, 792 - 778 + 1.8);

  composer.use_font("F1", "Helvetica-Bold", 24);
  const std::string title = "Synthetic Layouts at Scale";
  composer.text_at(72, 710, title);
  add_region(gt, 1, "title", 72, 792 - 710 - 19.2, 72 + composer.measure(title),
             792 - 710 + 4.8);

  composer.use_font("F1", "Helvetica-Bold", 14);
  composer.text_at(72, 660, "1 Introduction");
  add_region(gt, 1, "section-header", 72, 792 - 660 - 11.2, 200, 792 - 660 + 2.8);

  composer.use_font("F1", "Helvetica", 10);
  double y = 636;
  double max_r = 72;
  for (int i = 0; i < 4; ++i) {
    std::string line = fit_line(rng, composer, 440);
    max_r = std::max(max_r, 72 + composer.measure(line));
    composer.text_at(72, y, line);
    y -= 14;
  }
  add_region(gt, 1, "text", 72, 792 - 636 - 8, max_r, 792 - (y + 14) + 2.8);

  y -= 14;
  for (int i = 0; i < 3; ++i) {
    std::string item = "- " + random_line(rng, 2, 4);
    composer.text_at(86, y, item);
    add_region(gt, 1, "list-item", 86, 792 - y - 8, 86 + composer.measure(item),
               792 - y + 2.8);
    y -= 14;
  }

  composer.use_font("F1", "Helvetica-Bold", 14);
  y -= 16;
  composer.text_at(72, y, "2 Results");
  add_region(gt, 1, "section-header", 72, 792 - y - 11.2, 180, 792 - y + 2.8);

  // Aligned pseudo-table: 3 rows sharing 3 x-start positions.
  composer.use_font("F1", "Helvetica", 10);
  y -= 26;
  const double table_top = 792 - y - 8;
  const char* grid[3][3] = {{"name", "count", "share"},
                            {"alpha", "120", "0.42"},
                            {"bravo", "77", "0.27"}};
  for (int r = 0; r < 3; ++r) {
    composer.text_at(72, y, grid[r][0]);
    composer.text_at(200, y, grid[r][1]);
    composer.text_at(330, y, grid[r][2]);
    y -= 14;
  }
  add_region(gt, 1, "table", 72, table_top, 380, 792 - (y + 14) + 2.8);

  composer.use_font("F1", "Helvetica", 9);
  composer.text_at(300, 24, "1");
  add_region(gt, 1, "page-footer", 300, 792 - 24 - 7.2, 310, 792 - 24 + 1.8);

  GeneratedPdf out = finish_single_page(b, composer,
                                        register_fonts(b, {.helvetica = true}, compress), "",
                                        flavor, compress, "article");
  out.regions = std::move(gt.regions);
  return out;
}

GeneratedPdf make_table_page(std::uint32_t seed, int rows, int cols, XrefFlavor flavor) {
  std::mt19937 rng(seed);
  PdfBuilder b;
  PageComposer composer(612, 792);
  composer.use_font("F1", "Helvetica", 10);
  GeneratedPdf gt;

  const double x0 = 72, col_w = 60, row_h = 16, y0 = 700;
  std::uniform_int_distribution<int> value(0, 999);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      std::string text =
          r == 0 ? std::string(kWords[c % 20]) : std::to_string(value(rng));
      composer.text_at(x0 + c * col_w, y0 - r * row_h, text);
    }
  }
  add_region(gt, 1, "table", x0, 792 - y0 - 8, x0 + cols * col_w,
             792 - (y0 - (rows - 1) * row_h) + 2.8);

  GeneratedPdf out = finish_single_page(b, composer,
                                        register_fonts(b, {.helvetica = true}, false), "",
                                        flavor, false, "table-grid");
  out.regions = std::move(gt.regions);
  return out;
}

GeneratedPdf make_multi_page(std::uint32_t seed, int n_pages, XrefFlavor flavor) {
  std::mt19937 rng(seed);
  PdfBuilder b;
  std::string fonts = register_fonts(b, {.helvetica = true}, true);

  GeneratedPdf out;
  out.name = "multi-page";
  out.pages = n_pages;

  int pages_obj = b.reserve_object();
  std::vector<int> kids;
  for (int p = 1; p <= n_pages; ++p) {
    PageComposer composer(612, 792);
    composer.use_font("F1", "Helvetica", 11);
    double y = 720;
    std::uniform_int_distribution<int> lines(1, 4);
    const int n = lines(rng);
    for (int i = 0; i < n; ++i) {
      composer.text_at(72, y, "p" + std::to_string(p) + " " + random_line(rng, 2, 5));
      y -= 15;
    }
    int content = b.add_stream("", to_bytes(composer.content()), true);
    kids.push_back(b.add_object(page_body(pages_obj, 612, 792, fonts, "", content)));
    for (GtCell cell : composer.take_cells()) {
      cell.page_no = p;
      out.cells.push_back(std::move(cell));
    }
  }
  b.set_object(pages_obj, pages_body(kids));
  int catalog = b.add_object("<< /Type /Catalog /Pages " + ref(pages_obj) + " >>");
  out.bytes = b.build(flavor, catalog);
  return out;
}

GeneratedPdf make_empty_page(XrefFlavor flavor) {
  PdfBuilder b;
  int pages = b.reserve_object();
  int page = b.add_object("<< /Type /Page /Parent " + ref(pages) +
                          " /MediaBox [0 0 612 792] >>");
  b.set_object(pages, pages_body({page}));
  int catalog = b.add_object("<< /Type /Catalog /Pages " + ref(pages) + " >>");

  GeneratedPdf out;
  out.name = "empty-page";
  out.bytes = b.build(flavor, catalog);
  return out;
}

GeneratedPdf make_bitmap_page(XrefFlavor flavor) {
  PdfBuilder b;
  int image = add_gray_image(b);
  PageComposer composer(612, 792);
  composer.use_font("F1", "Helvetica", 10);
  composer.image_at(72, 600, 100, 50, "Im0");
  composer.text_at(72, 560, "Figure 1: a gray square");

  GeneratedPdf out = finish_single_page(b, composer,
                                        register_fonts(b, {.helvetica = true}, false),
                                        "/Im0 " + ref(image) + " ", flavor, false, "bitmap");
  add_region(out, 1, "picture", 72, 792 - 650, 172, 792 - 600);
  add_region(out, 1, "caption", 72, 792 - 560 - 8, 200, 792 - 560 + 2);
  return out;
}

GeneratedPdf make_corrupt_page_stream() {
  PdfBuilder b;
  std::string fonts = register_fonts(b, {.helvetica = true}, false);

  PageComposer good(612, 792);
  good.use_font("F1", "Helvetica", 11);
  good.text_at(72, 700, "good page");
  int good_content = b.add_stream("", to_bytes(good.content()), false);

  // Declares FlateDecode but holds garbage.
  std::string broken_body =
      "<< /Filter /FlateDecode /Length 20 >>\nstream\nNOT-A-FLATE-STREAM!!\nendstream";
  int bad_content = b.reserve_object();
  b.set_object(bad_content, broken_body);

  int pages = b.reserve_object();
  int p1 = b.add_object(page_body(pages, 612, 792, fonts, "", good_content));
  int p2 = b.add_object(page_body(pages, 612, 792, fonts, "", bad_content));
  b.set_object(pages, pages_body({p1, p2}));
  int catalog = b.add_object("<< /Type /Catalog /Pages " + ref(pages) + " >>");

  GeneratedPdf out;
  out.name = "corrupt-page";
  out.pages = 2;
  out.cells = good.take_cells();
  out.bytes = b.build(XrefFlavor::Classic, catalog);
  return out;
}

std::vector<std::uint8_t> make_truncated_file() {
  return to_bytes("%PDF-1.7\n%truncated\n");
}

std::vector<std::uint8_t> make_encrypted_file() {
  PdfBuilder b;
  int pages = b.reserve_object();
  int page = b.add_object("<< /Type /Page /Parent " + ref(pages) +
                          " /MediaBox [0 0 612 792] >>");
  b.set_object(pages, pages_body({page}));
  int catalog = b.add_object("<< /Type /Catalog /Pages " + ref(pages) + " >>");
  int encrypt = b.add_object("<< /Filter /Standard /V 1 /R 2 /O <00> /U <00> /P -44 >>");
  return b.build(XrefFlavor::Classic, catalog, " /Encrypt " + ref(encrypt));
}

std::vector<std::uint8_t> make_bad_startxref_file() {
  GeneratedPdf good = make_paragraph_page(7, XrefFlavor::Classic, false);
  std::string text(good.bytes.begin(), good.bytes.end());
  const auto pos = text.rfind("startxref\n");
  std::size_t digits = pos + 10;
  while (digits < text.size() && std::isdigit(static_cast<unsigned char>(text[digits]))) {
    text[digits] = '9';
    ++digits;
  }
  return to_bytes(text);
}

std::vector<GeneratedPdf> standard_suite(int count) {
  std::vector<GeneratedPdf> out;
  out.reserve(static_cast<std::size_t>(count));
  const XrefFlavor flavors[] = {XrefFlavor::Classic, XrefFlavor::Stream,
                                XrefFlavor::ObjectStreams};
  int i = 0;
  while (static_cast<int>(out.size()) < count) {
    const XrefFlavor flavor = flavors[i % 3];
    const std::uint32_t seed = static_cast<std::uint32_t>(i);
    switch (i % 7) {
      case 0: out.push_back(make_paragraph_page(seed, flavor, i % 2 == 0)); break;
      case 1: out.push_back(make_two_column_page(seed, flavor)); break;
      case 2: out.push_back(make_kerning_page(seed, flavor)); break;
      case 3: out.push_back(make_identity_h_page(seed, flavor)); break;
      case 4: out.push_back(make_article_page(seed, flavor, i % 2 == 1)); break;
      case 5: out.push_back(make_table_page(seed, 3 + static_cast<int>(seed % 4),
                                            3 + static_cast<int>(seed % 3), flavor)); break;
      case 6: out.push_back(make_multi_page(seed, 2 + static_cast<int>(seed % 3), flavor));
        break;
    }
    out.back().name += "-" + std::to_string(i);
    ++i;
  }
  return out;
}

}  // namespace docforge::pdfgen
