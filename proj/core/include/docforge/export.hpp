#pragma once

#include <string>

#include "docforge/document.hpp"

namespace docforge {

struct MarkdownExportOptions {
  bool include_furniture = false;
  std::string image_placeholder = "<!-- image -->";
};

struct HtmlExportOptions {
  bool include_furniture = false;
};

/// Deterministic Markdown rendering in reading order. UTF-8, LF line
/// endings, exactly one trailing newline (empty documents render empty).
std::string export_markdown(const DoclingDocument& doc,
                            const MarkdownExportOptions& options = {});

/// Semantic HTML wrapped in a minimal skeleton; all text escaped.
std::string export_html(const DoclingDocument& doc, const HtmlExportOptions& options = {});

}  // namespace docforge
