// Built-in advance widths for the standard-14 font families (Adobe core
// metrics, ASCII range). Symbol and ZapfDingbats are recognized but have no
// width table here; callers fall back to the 500/1000 em default with a
// warning.
#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "docforge/pdf/fonts.hpp"

namespace docforge::pdf {

namespace {

// Widths for char codes 32..126 in 1/1000 em.
using AsciiWidths = std::array<short, 95>;

constexpr AsciiWidths kHelvetica = {
    278, 278, 355, 556, 556, 889, 667, 191, 333, 333, 389, 584, 278, 333,
    278, 278, 556, 556, 556, 556, 556, 556, 556, 556, 556, 556, 278, 278,
    584, 584, 584, 556, 1015, 667, 667, 722, 722, 667, 611, 778, 722, 278,
    500, 667, 556, 833, 722, 778, 667, 778, 722, 667, 611, 722, 667, 944,
    667, 667, 611, 278, 278, 278, 469, 556, 333, 556, 556, 500, 556, 556,
    278, 556, 556, 222, 222, 500, 222, 833, 556, 556, 556, 556, 333, 500,
    278, 556, 500, 722, 500, 500, 500, 334, 260, 334, 584};

constexpr AsciiWidths kHelveticaBold = {
    278, 333, 474, 556, 556, 889, 722, 238, 333, 333, 389, 584, 278, 333,
    278, 278, 556, 556, 556, 556, 556, 556, 556, 556, 556, 556, 333, 333,
    584, 584, 584, 611, 975, 722, 722, 722, 722, 667, 611, 778, 722, 278,
    556, 722, 611, 833, 722, 778, 667, 778, 722, 667, 611, 722, 667, 944,
    667, 667, 611, 333, 278, 333, 584, 556, 333, 556, 611, 556, 611, 556,
    333, 611, 611, 278, 278, 556, 278, 889, 611, 611, 611, 611, 389, 556,
    333, 611, 556, 778, 556, 556, 500, 389, 280, 389, 584};

constexpr AsciiWidths kTimesRoman = {
    250, 333, 408, 500, 500, 833, 778, 180, 333, 333, 500, 564, 250, 333,
    250, 278, 500, 500, 500, 500, 500, 500, 500, 500, 500, 500, 278, 278,
    564, 564, 564, 444, 921, 722, 667, 667, 722, 611, 556, 722, 722, 333,
    389, 722, 611, 889, 722, 722, 556, 722, 667, 556, 611, 722, 722, 944,
    722, 722, 611, 333, 278, 333, 469, 500, 333, 444, 500, 444, 500, 444,
    333, 500, 500, 278, 278, 500, 278, 778, 500, 500, 500, 500, 333, 389,
    278, 500, 500, 722, 500, 500, 444, 480, 200, 480, 541};

constexpr AsciiWidths kTimesBold = {
    250, 333, 555, 500, 500, 1000, 833, 278, 333, 333, 500, 570, 250, 333,
    250, 278, 500, 500, 500, 500, 500, 500, 500, 500, 500, 500, 333, 333,
    570, 570, 570, 500, 930, 722, 667, 722, 722, 667, 611, 778, 778, 389,
    500, 778, 667, 944, 722, 778, 611, 778, 722, 556, 667, 722, 722, 1000,
    722, 722, 667, 333, 278, 333, 581, 500, 333, 500, 556, 444, 556, 444,
    333, 500, 556, 278, 333, 556, 278, 833, 556, 500, 556, 556, 444, 389,
    333, 556, 500, 722, 500, 500, 444, 394, 220, 394, 520};

constexpr AsciiWidths kTimesItalic = {
    250, 333, 420, 500, 500, 833, 778, 214, 333, 333, 500, 675, 250, 333,
    250, 278, 500, 500, 500, 500, 500, 500, 500, 500, 500, 500, 333, 333,
    675, 675, 675, 500, 920, 611, 611, 667, 722, 611, 611, 722, 722, 333,
    444, 667, 556, 833, 667, 722, 611, 722, 611, 500, 556, 722, 611, 833,
    611, 556, 556, 389, 278, 389, 422, 500, 333, 500, 500, 444, 500, 444,
    278, 500, 500, 278, 278, 444, 278, 722, 500, 500, 500, 500, 389, 389,
    278, 500, 444, 667, 444, 444, 389, 400, 275, 400, 541};

constexpr AsciiWidths kTimesBoldItalic = {
    250, 389, 555, 500, 500, 833, 778, 278, 333, 333, 500, 570, 250, 333,
    250, 278, 500, 500, 500, 500, 500, 500, 500, 500, 500, 500, 333, 333,
    570, 570, 570, 500, 832, 667, 667, 667, 722, 667, 667, 722, 778, 389,
    500, 667, 611, 889, 722, 722, 611, 722, 667, 556, 611, 722, 667, 889,
    667, 611, 611, 333, 278, 333, 570, 500, 333, 500, 500, 444, 500, 444,
    333, 500, 556, 278, 278, 500, 278, 778, 556, 500, 500, 500, 389, 389,
    278, 556, 444, 667, 500, 444, 389, 348, 220, 348, 570};

enum class Family { Helvetica, Times, Courier, Symbol, ZapfDingbats, None };

struct FontId {
  Family family = Family::None;
  bool bold = false;
  bool italic = false;
};

bool contains_ci(std::string_view haystack, std::string_view needle) {
  if (needle.size() > haystack.size()) return false;
  for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < needle.size(); ++j) {
      char a = haystack[i + j], b = needle[j];
      if (a >= 'A' && a <= 'Z') a += 32;
      if (b >= 'A' && b <= 'Z') b += 32;
      if (a != b) { ok = false; break; }
    }
    if (ok) return true;
  }
  return false;
}

FontId identify(std::string_view base) {
  FontId id;
  if (contains_ci(base, "courier") || contains_ci(base, "mono")) id.family = Family::Courier;
  else if (contains_ci(base, "times")) id.family = Family::Times;
  else if (contains_ci(base, "helvetica") || contains_ci(base, "arial"))
    id.family = Family::Helvetica;
  else if (contains_ci(base, "zapf") || contains_ci(base, "dingbat"))
    id.family = Family::ZapfDingbats;
  else if (contains_ci(base, "symbol")) id.family = Family::Symbol;
  id.bold = contains_ci(base, "bold");
  id.italic = contains_ci(base, "italic") || contains_ci(base, "oblique");
  return id;
}

// Latin-1 accented letters share the base letter's advance in the core AFMs.
char32_t strip_accent(char32_t cp) {
  if (cp >= 0x00C0 && cp <= 0x00C5) return 'A';
  if (cp == 0x00C7) return 'C';
  if (cp >= 0x00C8 && cp <= 0x00CB) return 'E';
  if (cp >= 0x00CC && cp <= 0x00CF) return 'I';
  if (cp == 0x00D1) return 'N';
  if ((cp >= 0x00D2 && cp <= 0x00D6) || cp == 0x00D8) return 'O';
  if (cp >= 0x00D9 && cp <= 0x00DC) return 'U';
  if (cp == 0x00DD) return 'Y';
  if (cp >= 0x00E0 && cp <= 0x00E5) return 'a';
  if (cp == 0x00E7) return 'c';
  if (cp >= 0x00E8 && cp <= 0x00EB) return 'e';
  if (cp >= 0x00EC && cp <= 0x00EF) return 'i';
  if (cp == 0x00F1) return 'n';
  if ((cp >= 0x00F2 && cp <= 0x00F6) || cp == 0x00F8) return 'o';
  if (cp >= 0x00F9 && cp <= 0x00FC) return 'u';
  if (cp == 0x00FD || cp == 0x00FF) return 'y';
  return cp;
}

}  // namespace

std::string normalize_base_font(std::string_view base_font) {
  // Subset tag: six uppercase letters and '+'.
  if (base_font.size() > 7 && base_font[6] == '+') {
    bool tag = true;
    for (int i = 0; i < 6; ++i)
      if (base_font[i] < 'A' || base_font[i] > 'Z') { tag = false; break; }
    if (tag) return std::string(base_font.substr(7));
  }
  return std::string(base_font);
}

bool is_standard14_base(std::string_view normalized_base) {
  return identify(normalized_base).family != Family::None;
}

double standard14_width(std::string_view normalized_base, char32_t unicode) {
  const FontId id = identify(normalized_base);
  if (id.family == Family::None) return -1.0;
  if (id.family == Family::Courier) return 600.0;
  if (id.family == Family::Symbol || id.family == Family::ZapfDingbats) return -1.0;

  const char32_t cp = strip_accent(unicode);
  if (cp < 32 || cp > 126) return -1.0;
  const std::size_t idx = static_cast<std::size_t>(cp - 32);

  if (id.family == Family::Helvetica)
    return id.bold ? kHelveticaBold[idx] : kHelvetica[idx];  // oblique shares widths

  if (id.bold && id.italic) return kTimesBoldItalic[idx];
  if (id.bold) return kTimesBold[idx];
  if (id.italic) return kTimesItalic[idx];
  return kTimesRoman[idx];
}

}  // namespace docforge::pdf
