#include <algorithm>
#include <map>
#include <set>

#include "docforge/export.hpp"

namespace docforge {

namespace {

std::string escape_html(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

class HtmlWriter {
public:
  HtmlWriter(const DoclingDocument& doc, const HtmlExportOptions& options)
      : doc_(doc), options_(options) {
    for (const TableItem& table : doc.tables())
      if (table.caption) claimed_.insert(*table.caption);
    for (const PictureItem& picture : doc.pictures())
      if (picture.caption) claimed_.insert(*picture.caption);
  }

  std::string run() {
    out_ += "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n<title>";
    out_ += escape_html(doc_.name());
    out_ += "</title>\n</head>\n<body>\n";
    for (NodeRef root : doc_.body()) render(root);
    if (options_.include_furniture) {
      for (NodeRef root : doc_.furniture())
        line("<p>" + escape_html(doc_.text_of(root)) + "</p>");
    }
    out_ += "</body>\n</html>\n";
    return out_;
  }

private:
  void line(const std::string& s) {
    out_ += s;
    out_ += '\n';
  }

  void render(NodeRef ref) {
    switch (ref.store) {
      case StoreKind::Texts: render_text(ref); break;
      case StoreKind::Tables: render_table(ref); break;
      case StoreKind::Pictures: render_picture(ref); break;
      case StoreKind::Groups: render_group(ref); break;
    }
  }

  void render_text(NodeRef ref) {
    if (claimed_.contains(ref)) return;
    const TextItem& item = doc_.text(ref);
    switch (item.label) {
      case ItemLabel::Title:
        line("<h1>" + escape_html(item.text) + "</h1>");
        break;
      case ItemLabel::SectionHeader: {
        const int level = std::clamp(item.level, 1, 6);
        line("<h" + std::to_string(level) + ">" + escape_html(item.text) + "</h" +
             std::to_string(level) + ">");
        break;
      }
      case ItemLabel::Caption:
        line("<p><em>" + escape_html(item.text) + "</em></p>");
        break;
      case ItemLabel::Code:
      case ItemLabel::Formula:
        line("<pre><code>" + escape_html(item.text) + "</code></pre>");
        break;
      case ItemLabel::ListItem:
        line("<ul>\n<li>" + escape_html(item.text) + "</li>\n</ul>");
        break;
      default:
        line("<p>" + escape_html(item.text) + "</p>");
        break;
    }
  }

  void render_table(NodeRef ref) {
    const TableItem& item = doc_.table(ref);
    const TableStructure& data = item.data;
    line("<table>");
    if (item.caption)
      line("<caption>" + escape_html(doc_.text(*item.caption).text) + "</caption>");

    // Leading all-ColumnHeader rows go to thead, the rest to tbody.
    std::map<int, std::vector<const TableCellSpec*>> rows;
    for (const TableCellSpec& cell : data.cells) rows[cell.start_row].push_back(&cell);
    for (auto& [row, cells] : rows)
      std::sort(cells.begin(), cells.end(),
                [](const TableCellSpec* a, const TableCellSpec* b) {
                  return a->start_col < b->start_col;
                });

    int thead_rows = 0;
    for (const auto& [row, cells] : rows) {
      if (row != thead_rows) break;
      const bool all_headers =
          std::all_of(cells.begin(), cells.end(), [](const TableCellSpec* cell) {
            return cell->role == CellRole::ColumnHeader;
          });
      if (!all_headers || cells.empty()) break;
      ++thead_rows;
    }

    auto render_row = [&](const std::vector<const TableCellSpec*>& cells) {
      std::string row_html = "<tr>";
      for (const TableCellSpec* cell : cells) {
        const bool header = cell->role != CellRole::Body;
        row_html += header ? "<th" : "<td";
        if (cell->row_span > 1) row_html += " rowspan=\"" + std::to_string(cell->row_span) + "\"";
        if (cell->col_span > 1) row_html += " colspan=\"" + std::to_string(cell->col_span) + "\"";
        row_html += ">";
        row_html += escape_html(cell->text);
        row_html += header ? "</th>" : "</td>";
      }
      row_html += "</tr>";
      line(row_html);
    };

    if (thead_rows > 0) {
      line("<thead>");
      for (const auto& [row, cells] : rows) {
        if (row >= thead_rows) break;
        render_row(cells);
      }
      line("</thead>");
    }
    line("<tbody>");
    for (const auto& [row, cells] : rows) {
      if (row < thead_rows) continue;
      render_row(cells);
    }
    line("</tbody>");
    line("</table>");
  }

  void render_picture(NodeRef ref) {
    const PictureItem& item = doc_.picture(ref);
    if (item.caption) {
      line("<figure><img><figcaption>" + escape_html(doc_.text(*item.caption).text) +
           "</figcaption></figure>");
    } else {
      line("<img>");
    }
  }

  void render_group(NodeRef ref) {
    const GroupItem& group = doc_.group(ref);
    if (group.label == ItemLabel::List) {
      render_list(ref);
      return;
    }
    if (group.name == "blockquote") {
      line("<blockquote>");
      for (NodeRef child : group.children)
        line("<p>" + escape_html(doc_.text_of(child)) + "</p>");
      line("</blockquote>");
      return;
    }
    for (NodeRef child : group.children) render(child);
  }

  void render_list(NodeRef ref) {
    const GroupItem& group = doc_.group(ref);
    const char* tag = group.name == "ordered-list" ? "ol" : "ul";
    line(std::string("<") + tag + ">");
    for (std::size_t i = 0; i < group.children.size(); ++i) {
      NodeRef child = group.children[i];
      if (child.store == StoreKind::Groups && doc_.group(child).label == ItemLabel::List) {
        // Orphan nested list (no preceding item): wrap in a bare <li> so the
        // structure survives a round trip.
        line("<li>");
        render_list(child);
        line("</li>");
        continue;
      }
      std::string item_html = "<li>" + escape_html(doc_.text_of(child));
      // Nested list directly after this item renders inside the <li>.
      if (i + 1 < group.children.size()) {
        NodeRef next = group.children[i + 1];
        if (next.store == StoreKind::Groups && doc_.group(next).label == ItemLabel::List) {
          out_ += item_html + "\n";
          render_list(next);
          line("</li>");
          ++i;
          continue;
        }
      }
      line(item_html + "</li>");
    }
    line(std::string("</") + tag + ">");
  }

  const DoclingDocument& doc_;
  const HtmlExportOptions& options_;
  std::set<NodeRef> claimed_;
  std::string out_;
};

}  // namespace

std::string export_html(const DoclingDocument& doc, const HtmlExportOptions& options) {
  return HtmlWriter(doc, options).run();
}

}  // namespace docforge
