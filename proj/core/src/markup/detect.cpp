#include <algorithm>
#include <cctype>

#include "docforge/errors.hpp"
#include "docforge/markup.hpp"

namespace docforge {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view extension_of(std::string_view name) {
  const auto dot = name.rfind('.');
  if (dot == std::string_view::npos) return {};
  return name.substr(dot + 1);
}

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    if (c < 0x80) len = 1;
    else if ((c & 0xE0) == 0xC0) len = 2;
    else if ((c & 0xF0) == 0xE0) len = 3;
    else if ((c & 0xF8) == 0xF0) len = 4;
    else return false;
    if (i + len > s.size()) return false;
    for (std::size_t k = 1; k < len; ++k)
      if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return false;
    if (len == 2 && c < 0xC2) return false;              // overlong
    if (len == 4 && c > 0xF4) return false;              // > U+10FFFF
    i += len;
  }
  return true;
}

}  // namespace

std::string_view to_string(InputFormat format) {
  switch (format) {
    case InputFormat::Pdf: return "pdf";
    case InputFormat::Html: return "html";
    case InputFormat::Markdown: return "markdown";
    case InputFormat::Unknown: return "unknown";
  }
  return "unknown";
}

InputFormat detect_format(std::span<const std::uint8_t> bytes, std::string_view filename_hint) {
  const std::size_t window_len = std::min<std::size_t>(bytes.size(), 1024);
  std::string window(reinterpret_cast<const char*>(bytes.data()), window_len);

  if (window.find("%PDF-") != std::string::npos) return InputFormat::Pdf;

  const std::string lowered = lower(window);
  if (lowered.find("<html") != std::string::npos ||
      lowered.find("<!doctype html") != std::string::npos)
    return InputFormat::Html;

  const std::string ext = lower(extension_of(filename_hint));
  if (ext == "pdf") return InputFormat::Pdf;
  if (ext == "html" || ext == "htm" || ext == "xhtml") return InputFormat::Html;
  if (ext == "md" || ext == "markdown" || ext == "mdown") return InputFormat::Markdown;

  return InputFormat::Unknown;
}

MarkupSource make_markup_source(InputFormat format, std::span<const std::uint8_t> bytes,
                                std::string_view filename) {
  MarkupSource source;
  source.format = format;
  source.filename = std::string(filename);
  source.binary_hash = fnv1a_hash(bytes.data(), bytes.size());

  std::string_view text(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  if (!valid_utf8(text))
    throw Error(ErrorCode::UndecodableInput, "input is not valid UTF-8");
  source.text = std::string(text);

  std::string_view stem = filename;
  if (const auto slash = stem.find_last_of("/\\"); slash != std::string_view::npos)
    stem = stem.substr(slash + 1);
  if (const auto dot = stem.rfind('.'); dot != std::string_view::npos && dot > 0)
    stem = stem.substr(0, dot);
  source.base_name = std::string(stem);
  return source;
}

}  // namespace docforge
