#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "docforge/document.hpp"

namespace docforge {

enum class InputFormat { Pdf, Html, Markdown, Unknown };

std::string_view to_string(InputFormat format);

/// Content sniffing beats the filename extension: a %PDF- header within the
/// first 1024 bytes wins, then an <html / <!doctype html prefix scan, then
/// the extension of filename_hint.
InputFormat detect_format(std::span<const std::uint8_t> bytes, std::string_view filename_hint);

struct MarkupSource {
  InputFormat format = InputFormat::Unknown;
  std::string text;       // UTF-8, BOM stripped
  std::string base_name;  // document name (file stem)
  std::string filename;
  std::uint64_t binary_hash = 0;
};

/// Validates UTF-8 (tolerating a BOM) and fills origin metadata.
/// Throws Error(UndecodableInput) on invalid UTF-8.
MarkupSource make_markup_source(InputFormat format, std::span<const std::uint8_t> bytes,
                                std::string_view filename);

/// Error-tolerant HTML to document: headings establish the group hierarchy,
/// p/ul/ol/table/img/figure/pre are mapped to items, script/style/head are
/// ignored. Markup provenance carries no bbox or page.
DoclingDocument parse_html(const MarkupSource& source, std::vector<std::string>* warnings = nullptr);

/// CommonMark core subset: ATX headings, paragraphs, nested lists, fenced
/// code, images, block quotes, GitHub pipe tables. Inline marks flattened.
DoclingDocument parse_markdown(const MarkupSource& source,
                               std::vector<std::string>* warnings = nullptr);

}  // namespace docforge
