#include <algorithm>
#include <cctype>

#include "docforge/markup.hpp"
#include "section_stack.hpp"

namespace docforge {

namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.emplace_back(text.substr(start));
      break;
    }
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

bool is_blank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

std::string_view trimmed(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

int leading_spaces(std::string_view line) {
  int n = 0;
  for (char c : line) {
    if (c == ' ') ++n;
    else if (c == '\t') n += 4;
    else break;
  }
  return n;
}

/// Strips emphasis, code spans, links, and escapes down to plain text.
std::string flatten_inline(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    const char c = raw[i];
    if (c == '\\' && i + 1 < raw.size()) {
      out.push_back(raw[i + 1]);
      i += 2;
      continue;
    }
    if (c == '*' || c == '_' || c == '`') {
      ++i;
      continue;
    }
    if (c == '~' && i + 1 < raw.size() && raw[i + 1] == '~') {
      i += 2;
      continue;
    }
    if (c == '!' && i + 1 < raw.size() && raw[i + 1] == '[') {
      ++i;  // treat like a link; alt text survives
      continue;
    }
    if (c == '[') {
      const std::size_t close = raw.find(']', i + 1);
      if (close != std::string_view::npos && close + 1 < raw.size() &&
          raw[close + 1] == '(') {
        const std::size_t paren = raw.find(')', close + 2);
        if (paren != std::string_view::npos) {
          out += flatten_inline(raw.substr(i + 1, close - i - 1));
          i = paren + 1;  // link target dropped
          continue;
        }
      }
      ++i;
      continue;
    }
    if (c == ']') {
      ++i;
      continue;
    }
    if (c == '<') {
      const std::size_t close = raw.find('>', i + 1);
      if (close != std::string_view::npos) {
        std::string_view inner = raw.substr(i + 1, close - i - 1);
        if (inner.find("://") != std::string_view::npos) {
          out += std::string(inner);  // autolink: keep the target text
          i = close + 1;
          continue;
        }
      }
      out.push_back(c);
      ++i;
      continue;
    }
    out.push_back(c);
    ++i;
  }
  return out;
}

struct ListMarker {
  bool matched = false;
  bool ordered = false;
  int indent = 0;
  std::string_view rest;
};

ListMarker match_list_marker(std::string_view line) {
  ListMarker m;
  m.indent = leading_spaces(line);
  std::string_view body = line.substr(std::min<std::size_t>(line.size(),
      static_cast<std::size_t>(m.indent)));
  // the indent counter above counted tabs as 4; recompute body by scan
  std::size_t skip = 0;
  while (skip < line.size() && (line[skip] == ' ' || line[skip] == '\t')) ++skip;
  body = line.substr(skip);

  if (body.size() >= 2 && (body[0] == '-' || body[0] == '*' || body[0] == '+') &&
      (body[1] == ' ' || body[1] == '\t')) {
    m.matched = true;
    m.ordered = false;
    m.rest = trimmed(body.substr(2));
    return m;
  }
  std::size_t digits = 0;
  while (digits < body.size() && std::isdigit(static_cast<unsigned char>(body[digits])))
    ++digits;
  if (digits > 0 && digits + 1 < body.size() &&
      (body[digits] == '.' || body[digits] == ')') &&
      (body[digits + 1] == ' ' || body[digits + 1] == '\t')) {
    m.matched = true;
    m.ordered = true;
    m.rest = trimmed(body.substr(digits + 2));
    return m;
  }
  return m;
}

bool is_table_separator(std::string_view line) {
  std::string_view body = trimmed(line);
  if (body.empty() || body.find('-') == std::string_view::npos) return false;
  bool saw_pipe = false;
  for (char c : body) {
    if (c == '|') saw_pipe = true;
    else if (c != '-' && c != ':' && c != ' ' && c != '\t') return false;
  }
  return saw_pipe || body.find('-') != std::string_view::npos;
}

std::vector<std::string> split_table_row(std::string_view line) {
  std::string_view body = trimmed(line);
  if (!body.empty() && body.front() == '|') body.remove_prefix(1);
  if (!body.empty() && body.back() == '|') body.remove_suffix(1);
  std::vector<std::string> cells;
  std::string cur;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] == '\\' && i + 1 < body.size() && body[i + 1] == '|') {
      cur.push_back('|');
      ++i;
    } else if (body[i] == '|') {
      cells.push_back(std::string(trimmed(cur)));
      cur.clear();
    } else {
      cur.push_back(body[i]);
    }
  }
  cells.push_back(std::string(trimmed(cur)));
  return cells;
}

bool is_thematic_break(std::string_view line) {
  std::string_view body = trimmed(line);
  if (body.size() < 3) return false;
  const char c = body[0];
  if (c != '-' && c != '*' && c != '_') return false;
  int count = 0;
  for (char x : body) {
    if (x == c) ++count;
    else if (x != ' ') return false;
  }
  return count >= 3;
}

class MarkdownBuilder {
public:
  MarkdownBuilder(DoclingDocument& doc, std::vector<std::string>* warnings)
      : doc_(doc), warnings_(warnings) {}

  void run(const std::vector<std::string>& lines) {
    std::size_t i = 0;
    while (i < lines.size()) {
      const std::string& line = lines[i];

      if (is_blank(line)) {
        flush_paragraph();
        close_lists();
        ++i;
        continue;
      }

      // Fenced code blocks.
      std::string_view body = trimmed(line);
      if (body.starts_with("```") || body.starts_with("~~~")) {
        flush_paragraph();
        close_lists();
        const std::string fence(body.substr(0, 3));
        std::string code;
        ++i;
        while (i < lines.size() && !trimmed(lines[i]).starts_with(fence)) {
          code += lines[i];
          code += '\n';
          ++i;
        }
        if (i < lines.size()) ++i;  // consume closing fence
        if (!code.empty()) code.pop_back();
        add_text(ItemLabel::Code, std::move(code), sections_.current());
        continue;
      }

      // ATX headings.
      if (body.starts_with("#")) {
        std::size_t level = 0;
        while (level < body.size() && body[level] == '#') ++level;
        if (level <= 6 && level < body.size() && (body[level] == ' ' || body[level] == '\t')) {
          flush_paragraph();
          close_lists();
          std::string_view text = trimmed(body.substr(level));
          while (!text.empty() && text.back() == '#') text.remove_suffix(1);
          TextItem heading;
          heading.label = ItemLabel::SectionHeader;
          heading.level = static_cast<int>(level);
          heading.text = flatten_inline(trimmed(text));
          heading.prov.push_back(
              Provenance{1, std::nullopt, CharSpan{0, heading.text.size()}});
          sections_.open_section(doc_, std::move(heading));
          ++i;
          continue;
        }
      }

      // Pipe tables: a row line followed by a separator line.
      if (body.find('|') != std::string_view::npos && i + 1 < lines.size() &&
          is_table_separator(lines[i + 1]) &&
          trimmed(lines[i + 1]).find('|') != std::string_view::npos) {
        flush_paragraph();
        close_lists();
        build_table(lines, i);
        continue;
      }

      // Lists.
      if (ListMarker marker = match_list_marker(line); marker.matched) {
        flush_paragraph();
        handle_list_item(marker);
        ++i;
        continue;
      }

      // Block quotes.
      if (body.starts_with(">")) {
        flush_paragraph();
        close_lists();
        NodeRef group = doc_.add_item(GroupItem{ItemLabel::Group, "blockquote", {}},
                                      sections_.current());
        std::string quoted;
        while (i < lines.size() && trimmed(lines[i]).starts_with(">")) {
          std::string_view inner = trimmed(lines[i]);
          inner.remove_prefix(1);
          if (!inner.empty() && inner.front() == ' ') inner.remove_prefix(1);
          if (inner.empty()) {
            if (!quoted.empty()) {
              add_text(ItemLabel::Text, flatten_inline(quoted), AttachPoint::under(group));
              quoted.clear();
            }
          } else {
            if (!quoted.empty()) quoted += ' ';
            quoted += std::string(inner);
          }
          ++i;
        }
        if (!quoted.empty())
          add_text(ItemLabel::Text, flatten_inline(quoted), AttachPoint::under(group));
        continue;
      }

      // Standalone image.
      if (body.starts_with("![")) {
        const std::size_t close = body.find("](");
        const std::size_t paren = close == std::string_view::npos
                                      ? std::string_view::npos
                                      : body.find(')', close);
        if (paren != std::string_view::npos && trimmed(body.substr(paren + 1)).empty()) {
          flush_paragraph();
          close_lists();
          PictureItem pic;
          pic.prov.push_back(Provenance{1, std::nullopt, std::nullopt});
          doc_.add_item(std::move(pic), sections_.current());
          ++i;
          continue;
        }
      }

      // Thematic breaks and setext underlines.
      if (is_thematic_break(line)) {
        if (!paragraph_.empty()) {
          warn("setext heading treated as paragraph text");
          paragraph_ += ' ';
          paragraph_ += std::string(body);
        }
        // Standalone rule: no item representation.
        ++i;
        continue;
      }
      if (!paragraph_.empty() && body.find_first_not_of("= \t") == std::string_view::npos &&
          body.find('=') != std::string_view::npos) {
        warn("setext heading treated as paragraph text");
        paragraph_ += ' ';
        paragraph_ += std::string(body);
        ++i;
        continue;
      }

      // Raw HTML blocks degrade to paragraphs.
      if (body.starts_with("<") && body.size() > 1 &&
          (std::isalpha(static_cast<unsigned char>(body[1])) || body[1] == '/')) {
        warn("HTML block treated as paragraph text");
      }

      // Lazy continuation of an open list item.
      if (!open_lists_.empty() && leading_spaces(line) >= 2) {
        append_to_last_item(std::string(body));
        ++i;
        continue;
      }
      close_lists();

      if (!paragraph_.empty()) paragraph_ += ' ';
      paragraph_ += std::string(body);
      ++i;
    }
    flush_paragraph();
  }

private:
  void warn(const std::string& message) {
    if (warnings_) warnings_->push_back(message);
  }

  void add_text(ItemLabel label, std::string text, AttachPoint at) {
    if (text.empty() && label != ItemLabel::Code) return;
    TextItem item;
    item.label = label;
    const std::size_t len = text.size();
    item.text = std::move(text);
    item.prov.push_back(Provenance{1, std::nullopt, CharSpan{0, len}});
    doc_.add_item(std::move(item), at);
  }

  void flush_paragraph() {
    if (paragraph_.empty()) return;
    std::string text = flatten_inline(paragraph_);
    paragraph_.clear();
    add_text(ItemLabel::Text, std::move(text), sections_.current());
  }

  void close_lists() { open_lists_.clear(); }

  void handle_list_item(const ListMarker& marker) {
    const int level = marker.indent / 2;
    while (!open_lists_.empty() && open_lists_.back().level > level) open_lists_.pop_back();

    if (open_lists_.empty() || open_lists_.back().level < level ||
        open_lists_.back().ordered != marker.ordered) {
      if (!open_lists_.empty() && open_lists_.back().level == level) open_lists_.pop_back();
      AttachPoint at = open_lists_.empty() ? sections_.current()
                                           : AttachPoint::under(open_lists_.back().group);
      NodeRef group = doc_.add_item(
          GroupItem{ItemLabel::List, marker.ordered ? "ordered-list" : "list", {}}, at);
      open_lists_.push_back(OpenList{level, marker.ordered, group});
    }

    add_text(ItemLabel::ListItem, flatten_inline(marker.rest),
             AttachPoint::under(open_lists_.back().group));
  }

  void append_to_last_item(const std::string& text) {
    if (open_lists_.empty()) return;
    const GroupItem& group = doc_.group(open_lists_.back().group);
    if (group.children.empty()) return;
    NodeRef last = group.children.back();
    if (last.store != StoreKind::Texts) return;
    TextItem& item = doc_.text_mut(last);
    item.text += ' ';
    item.text += flatten_inline(text);
    if (!item.prov.empty() && item.prov[0].charspan)
      item.prov[0].charspan->end = item.text.size();
  }

  void build_table(const std::vector<std::string>& lines, std::size_t& i) {
    std::vector<std::string> header = split_table_row(lines[i]);
    i += 2;  // skip separator
    std::vector<std::vector<std::string>> rows;
    while (i < lines.size() && !is_blank(lines[i]) &&
           lines[i].find('|') != std::string::npos) {
      rows.push_back(split_table_row(lines[i]));
      ++i;
    }

    TableStructure data;
    data.num_cols = static_cast<int>(header.size());
    for (const auto& row : rows)
      data.num_cols = std::max(data.num_cols, static_cast<int>(row.size()));
    data.num_rows = static_cast<int>(rows.size()) + 1;

    auto add_row = [&](const std::vector<std::string>& cells, int row, CellRole role) {
      for (int c = 0; c < data.num_cols; ++c) {
        TableCellSpec spec;
        spec.start_row = row;
        spec.start_col = c;
        spec.role = role;
        spec.text = c < static_cast<int>(cells.size()) ? flatten_inline(cells[c]) : "";
        data.cells.push_back(std::move(spec));
      }
    };
    add_row(header, 0, CellRole::ColumnHeader);
    for (std::size_t r = 0; r < rows.size(); ++r)
      add_row(rows[r], static_cast<int>(r) + 1, CellRole::Body);

    TableItem table;
    table.data = std::move(data);
    table.prov.push_back(Provenance{1, std::nullopt, std::nullopt});
    doc_.add_item(std::move(table), sections_.current());
  }

  struct OpenList {
    int level = 0;
    bool ordered = false;
    NodeRef group;
  };

  DoclingDocument& doc_;
  std::vector<std::string>* warnings_;
  internal::SectionStack sections_;
  std::string paragraph_;
  std::vector<OpenList> open_lists_;
};

}  // namespace

DoclingDocument parse_markdown(const MarkupSource& source,
                               std::vector<std::string>* warnings) {
  DoclingDocument doc(source.base_name,
                      DocumentOrigin{"text/markdown", source.filename, source.binary_hash});
  MarkdownBuilder builder(doc, warnings);
  builder.run(split_lines(source.text));
  return doc;
}

}  // namespace docforge
