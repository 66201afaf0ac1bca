// Predefined simple-font encodings and the glyph-name table used when a
// font carries /Differences.
#include <array>
#include <cstdint>
#include <map>
#include <string_view>

#include "docforge/pdf/fonts.hpp"

namespace docforge::pdf {

namespace {

using Table = std::array<char32_t, 256>;

Table make_ascii_base() {
  Table t{};
  for (int c = 0x20; c <= 0x7E; ++c) t[c] = static_cast<char32_t>(c);
  return t;
}

Table make_win_ansi() {
  Table t = make_ascii_base();
  // CP1252 extensions.
  t[0x80] = 0x20AC; t[0x82] = 0x201A; t[0x83] = 0x0192; t[0x84] = 0x201E;
  t[0x85] = 0x2026; t[0x86] = 0x2020; t[0x87] = 0x2021; t[0x88] = 0x02C6;
  t[0x89] = 0x2030; t[0x8A] = 0x0160; t[0x8B] = 0x2039; t[0x8C] = 0x0152;
  t[0x8E] = 0x017D; t[0x91] = 0x2018; t[0x92] = 0x2019; t[0x93] = 0x201C;
  t[0x94] = 0x201D; t[0x95] = 0x2022; t[0x96] = 0x2013; t[0x97] = 0x2014;
  t[0x98] = 0x02DC; t[0x99] = 0x2122; t[0x9A] = 0x0161; t[0x9B] = 0x203A;
  t[0x9C] = 0x0153; t[0x9E] = 0x017E; t[0x9F] = 0x0178;
  for (int c = 0xA0; c <= 0xFF; ++c) t[c] = static_cast<char32_t>(c);  // Latin-1
  t[0xA0] = 0x0020;  // nbsp rendered as plain space
  t[0xAD] = 0x002D;  // soft hyphen
  return t;
}

Table make_mac_roman() {
  Table t = make_ascii_base();
  static constexpr char32_t kHigh[128] = {
      0x00C4, 0x00C5, 0x00C7, 0x00C9, 0x00D1, 0x00D6, 0x00DC, 0x00E1,
      0x00E0, 0x00E2, 0x00E4, 0x00E3, 0x00E5, 0x00E7, 0x00E9, 0x00E8,
      0x00EA, 0x00EB, 0x00ED, 0x00EC, 0x00EE, 0x00EF, 0x00F1, 0x00F3,
      0x00F2, 0x00F4, 0x00F6, 0x00F5, 0x00FA, 0x00F9, 0x00FB, 0x00FC,
      0x2020, 0x00B0, 0x00A2, 0x00A3, 0x00A7, 0x2022, 0x00B6, 0x00DF,
      0x00AE, 0x00A9, 0x2122, 0x00B4, 0x00A8, 0x2260, 0x00C6, 0x00D8,
      0x221E, 0x00B1, 0x2264, 0x2265, 0x00A5, 0x00B5, 0x2202, 0x2211,
      0x220F, 0x03C0, 0x222B, 0x00AA, 0x00BA, 0x03A9, 0x00E6, 0x00F8,
      0x00BF, 0x00A1, 0x00AC, 0x221A, 0x0192, 0x2248, 0x2206, 0x00AB,
      0x00BB, 0x2026, 0x0020, 0x00C0, 0x00C3, 0x00D5, 0x0152, 0x0153,
      0x2013, 0x2014, 0x201C, 0x201D, 0x2018, 0x2019, 0x00F7, 0x25CA,
      0x00FF, 0x0178, 0x2044, 0x20AC, 0x2039, 0x203A, 0xFB01, 0xFB02,
      0x2021, 0x00B7, 0x201A, 0x201E, 0x2030, 0x00C2, 0x00CA, 0x00C1,
      0x00CB, 0x00C8, 0x00CD, 0x00CE, 0x00CF, 0x00CC, 0x00D3, 0x00D4,
      0xF8FF, 0x00D2, 0x00DA, 0x00DB, 0x00D9, 0x0131, 0x02C6, 0x02DC,
      0x00AF, 0x02D8, 0x02D9, 0x02DA, 0x00B8, 0x02DD, 0x02DB, 0x02C7,
  };
  for (int c = 0; c < 128; ++c) t[0x80 + c] = kHigh[c];
  return t;
}

Table make_standard() {
  Table t = make_ascii_base();
  t[0x27] = 0x2019;  // quoteright
  t[0x60] = 0x2018;  // quoteleft
  static constexpr std::pair<int, char32_t> kHigh[] = {
      {0xA1, 0x00A1}, {0xA2, 0x00A2}, {0xA3, 0x00A3}, {0xA4, 0x2044},
      {0xA5, 0x00A5}, {0xA6, 0x0192}, {0xA7, 0x00A7}, {0xA8, 0x00A4},
      {0xA9, 0x0027}, {0xAA, 0x201C}, {0xAB, 0x00AB}, {0xAC, 0x2039},
      {0xAD, 0x203A}, {0xAE, 0xFB01}, {0xAF, 0xFB02}, {0xB1, 0x2013},
      {0xB2, 0x2020}, {0xB3, 0x2021}, {0xB4, 0x00B7}, {0xB6, 0x00B6},
      {0xB7, 0x2022}, {0xB8, 0x201A}, {0xB9, 0x201E}, {0xBA, 0x201D},
      {0xBB, 0x00BB}, {0xBC, 0x2026}, {0xBD, 0x2030}, {0xBF, 0x00BF},
      {0xC1, 0x0060}, {0xC2, 0x00B4}, {0xC3, 0x02C6}, {0xC4, 0x02DC},
      {0xC5, 0x00AF}, {0xC6, 0x02D8}, {0xC7, 0x02D9}, {0xC8, 0x00A8},
      {0xCA, 0x02DA}, {0xCB, 0x00B8}, {0xCD, 0x02DD}, {0xCE, 0x02DB},
      {0xCF, 0x02C7}, {0xD0, 0x2014}, {0xE1, 0x00C6}, {0xE3, 0x00AA},
      {0xE8, 0x0141}, {0xE9, 0x00D8}, {0xEA, 0x0152}, {0xEB, 0x00BA},
      {0xF1, 0x00E6}, {0xF5, 0x0131}, {0xF8, 0x0142}, {0xF9, 0x00F8},
      {0xFA, 0x0153}, {0xFB, 0x00DF},
  };
  for (auto [code, cp] : kHigh) t[code] = cp;
  return t;
}

const std::map<std::string_view, char32_t>& glyph_names() {
  static const std::map<std::string_view, char32_t> kMap = {
      {"space", 0x0020}, {"exclam", 0x0021}, {"quotedbl", 0x0022},
      {"numbersign", 0x0023}, {"dollar", 0x0024}, {"percent", 0x0025},
      {"ampersand", 0x0026}, {"quotesingle", 0x0027}, {"parenleft", 0x0028},
      {"parenright", 0x0029}, {"asterisk", 0x002A}, {"plus", 0x002B},
      {"comma", 0x002C}, {"hyphen", 0x002D}, {"period", 0x002E},
      {"slash", 0x002F}, {"zero", 0x0030}, {"one", 0x0031}, {"two", 0x0032},
      {"three", 0x0033}, {"four", 0x0034}, {"five", 0x0035}, {"six", 0x0036},
      {"seven", 0x0037}, {"eight", 0x0038}, {"nine", 0x0039},
      {"colon", 0x003A}, {"semicolon", 0x003B}, {"less", 0x003C},
      {"equal", 0x003D}, {"greater", 0x003E}, {"question", 0x003F},
      {"at", 0x0040}, {"bracketleft", 0x005B}, {"backslash", 0x005C},
      {"bracketright", 0x005D}, {"asciicircum", 0x005E}, {"underscore", 0x005F},
      {"grave", 0x0060}, {"braceleft", 0x007B}, {"bar", 0x007C},
      {"braceright", 0x007D}, {"asciitilde", 0x007E},
      {"quoteleft", 0x2018}, {"quoteright", 0x2019},
      {"quotedblleft", 0x201C}, {"quotedblright", 0x201D},
      {"quotesinglbase", 0x201A}, {"quotedblbase", 0x201E},
      {"endash", 0x2013}, {"emdash", 0x2014}, {"bullet", 0x2022},
      {"dagger", 0x2020}, {"daggerdbl", 0x2021}, {"ellipsis", 0x2026},
      {"perthousand", 0x2030}, {"guilsinglleft", 0x2039}, {"guilsinglright", 0x203A},
      {"guillemotleft", 0x00AB}, {"guillemotright", 0x00BB},
      {"exclamdown", 0x00A1}, {"questiondown", 0x00BF}, {"cent", 0x00A2},
      {"sterling", 0x00A3}, {"currency", 0x00A4}, {"yen", 0x00A5},
      {"brokenbar", 0x00A6}, {"section", 0x00A7}, {"dieresis", 0x00A8},
      {"copyright", 0x00A9}, {"ordfeminine", 0x00AA}, {"logicalnot", 0x00AC},
      {"registered", 0x00AE}, {"macron", 0x00AF}, {"degree", 0x00B0},
      {"plusminus", 0x00B1}, {"twosuperior", 0x00B2}, {"threesuperior", 0x00B3},
      {"acute", 0x00B4}, {"mu", 0x00B5}, {"paragraph", 0x00B6},
      {"periodcentered", 0x00B7}, {"cedilla", 0x00B8}, {"onesuperior", 0x00B9},
      {"ordmasculine", 0x00BA}, {"onequarter", 0x00BC}, {"onehalf", 0x00BD},
      {"threequarters", 0x00BE}, {"multiply", 0x00D7}, {"divide", 0x00F7},
      {"Euro", 0x20AC}, {"minus", 0x2212}, {"trademark", 0x2122},
      {"florin", 0x0192}, {"fraction", 0x2044},
      {"fi", 0xFB01}, {"fl", 0xFB02},
      {"germandbls", 0x00DF}, {"AE", 0x00C6}, {"ae", 0x00E6},
      {"OE", 0x0152}, {"oe", 0x0153}, {"Oslash", 0x00D8}, {"oslash", 0x00F8},
      {"Lslash", 0x0141}, {"lslash", 0x0142}, {"dotlessi", 0x0131},
      {"Eth", 0x00D0}, {"eth", 0x00F0}, {"Thorn", 0x00DE}, {"thorn", 0x00FE},
      {"Agrave", 0x00C0}, {"Aacute", 0x00C1}, {"Acircumflex", 0x00C2},
      {"Atilde", 0x00C3}, {"Adieresis", 0x00C4}, {"Aring", 0x00C5},
      {"Ccedilla", 0x00C7}, {"Egrave", 0x00C8}, {"Eacute", 0x00C9},
      {"Ecircumflex", 0x00CA}, {"Edieresis", 0x00CB}, {"Igrave", 0x00CC},
      {"Iacute", 0x00CD}, {"Icircumflex", 0x00CE}, {"Idieresis", 0x00CF},
      {"Ntilde", 0x00D1}, {"Ograve", 0x00D2}, {"Oacute", 0x00D3},
      {"Ocircumflex", 0x00D4}, {"Otilde", 0x00D5}, {"Odieresis", 0x00D6},
      {"Ugrave", 0x00D9}, {"Uacute", 0x00DA}, {"Ucircumflex", 0x00DB},
      {"Udieresis", 0x00DC}, {"Yacute", 0x00DD},
      {"agrave", 0x00E0}, {"aacute", 0x00E1}, {"acircumflex", 0x00E2},
      {"atilde", 0x00E3}, {"adieresis", 0x00E4}, {"aring", 0x00E5},
      {"ccedilla", 0x00E7}, {"egrave", 0x00E8}, {"eacute", 0x00E9},
      {"ecircumflex", 0x00EA}, {"edieresis", 0x00EB}, {"igrave", 0x00EC},
      {"iacute", 0x00ED}, {"icircumflex", 0x00EE}, {"idieresis", 0x00EF},
      {"ntilde", 0x00F1}, {"ograve", 0x00F2}, {"oacute", 0x00F3},
      {"ocircumflex", 0x00F4}, {"otilde", 0x00F5}, {"odieresis", 0x00F6},
      {"ugrave", 0x00F9}, {"uacute", 0x00FA}, {"ucircumflex", 0x00FB},
      {"udieresis", 0x00FC}, {"yacute", 0x00FD}, {"ydieresis", 0x00FF},
      {"Scaron", 0x0160}, {"scaron", 0x0161}, {"Zcaron", 0x017D},
      {"zcaron", 0x017E}, {"Ydieresis", 0x0178}, {"circumflex", 0x02C6},
      {"tilde", 0x02DC}, {"caron", 0x02C7}, {"breve", 0x02D8},
      {"dotaccent", 0x02D9}, {"ring", 0x02DA}, {"ogonek", 0x02DB},
      {"hungarumlaut", 0x02DD}, {"nbspace", 0x0020},
  };
  return kMap;
}

int hex_nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

const std::array<char32_t, 256>& base_encoding_table(BaseEncodingId id) {
  static const Table kStandard = make_standard();
  static const Table kWinAnsi = make_win_ansi();
  static const Table kMacRoman = make_mac_roman();
  switch (id) {
    case BaseEncodingId::WinAnsi: return kWinAnsi;
    case BaseEncodingId::MacRoman: return kMacRoman;
    case BaseEncodingId::Standard: break;
  }
  return kStandard;
}

char32_t glyph_name_to_unicode(std::string_view name) {
  if (name.size() == 1) {
    const char c = name[0];
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) return static_cast<char32_t>(c);
  }
  if (auto it = glyph_names().find(name); it != glyph_names().end()) return it->second;
  // uniXXXX / uXXXX[XX] forms.
  auto parse_hex = [](std::string_view s) -> char32_t {
    char32_t v = 0;
    for (char c : s) {
      int n = hex_nibble(c);
      if (n < 0) return 0;
      v = (v << 4) | static_cast<char32_t>(n);
    }
    return v;
  };
  if (name.size() == 7 && name.starts_with("uni")) return parse_hex(name.substr(3));
  if ((name.size() == 5 || name.size() == 7) && name[0] == 'u') return parse_hex(name.substr(1));
  return 0;
}

}  // namespace docforge::pdf
