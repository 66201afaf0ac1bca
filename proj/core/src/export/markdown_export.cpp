#include <cctype>
#include <set>

#include "docforge/export.hpp"
#include "docforge/table_engine.hpp"

namespace docforge {

namespace {

/// Caption refs owned by a table or picture render with their target, not at
/// their own tree position.
std::set<NodeRef> claimed_captions(const DoclingDocument& doc) {
  std::set<NodeRef> out;
  for (const TableItem& table : doc.tables())
    if (table.caption) out.insert(*table.caption);
  for (const PictureItem& picture : doc.pictures())
    if (picture.caption) out.insert(*picture.caption);
  return out;
}

/// A paragraph that happens to start like a block marker must not change
/// shape on re-import.
std::string escape_leading_marker(std::string text) {
  if (text.empty()) return text;
  const char c = text[0];
  bool needs_escape = c == '#' || c == '-' || c == '*' || c == '+' || c == '>' || c == '`';
  if (!needs_escape && std::isdigit(static_cast<unsigned char>(c))) {
    std::size_t digits = 0;
    while (digits < text.size() && std::isdigit(static_cast<unsigned char>(text[digits])))
      ++digits;
    if (digits < text.size() && (text[digits] == '.' || text[digits] == ')'))
      needs_escape = true;
  }
  if (needs_escape) text.insert(text.begin(), '\\');
  return text;
}

class MarkdownWriter {
public:
  MarkdownWriter(const DoclingDocument& doc, const MarkdownExportOptions& options)
      : doc_(doc), options_(options), claimed_(claimed_captions(doc)) {}

  std::string run() {
    for (NodeRef root : doc_.body()) render(root);
    if (options_.include_furniture) {
      for (NodeRef root : doc_.furniture())
        blocks_.push_back(std::string(doc_.text_of(root)));
    }
    std::string out;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (i) out += "\n\n";
      out += blocks_[i];
    }
    if (!out.empty()) out += '\n';
    return out;
  }

private:
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
        blocks_.push_back("# " + item.text);
        break;
      case ItemLabel::SectionHeader: {
        const int level = std::min(std::max(item.level, 1), 6);
        blocks_.push_back(std::string(static_cast<std::size_t>(level), '#') + " " +
                          item.text);
        break;
      }
      case ItemLabel::Caption:
        blocks_.push_back("*" + item.text + "*");
        break;
      case ItemLabel::Code:
      case ItemLabel::Formula:
        blocks_.push_back("```\n" + item.text + "\n```");
        break;
      case ItemLabel::ListItem:
        // A list item outside a list group renders as a one-item list.
        blocks_.push_back("- " + item.text);
        break;
      default:
        blocks_.push_back(escape_leading_marker(item.text));
        break;
    }
  }

  void append_caption(const std::optional<NodeRef>& caption) {
    if (!caption) return;
    blocks_.push_back("*" + doc_.text(*caption).text + "*");
  }

  void render_table(NodeRef ref) {
    const TableItem& item = doc_.table(ref);
    if (item.data.empty()) {
      blocks_.push_back("<!-- table -->");
    } else {
      blocks_.push_back(render_markdown_table(item.data));
    }
    append_caption(item.caption);
  }

  void render_picture(NodeRef ref) {
    blocks_.push_back(options_.image_placeholder);
    append_caption(doc_.picture(ref).caption);
  }

  void render_group(NodeRef ref) {
    const GroupItem& group = doc_.group(ref);
    if (group.label == ItemLabel::List) {
      std::string block;
      render_list(ref, 0, block);
      if (!block.empty() && block.back() == '\n') block.pop_back();
      blocks_.push_back(std::move(block));
      return;
    }
    if (group.name == "blockquote") {
      std::string block;
      for (std::size_t i = 0; i < group.children.size(); ++i) {
        if (i) block += ">\n";
        block += "> " + std::string(doc_.text_of(group.children[i])) + "\n";
      }
      if (!block.empty() && block.back() == '\n') block.pop_back();
      blocks_.push_back(std::move(block));
      return;
    }
    for (NodeRef child : group.children) render(child);
  }

  void render_list(NodeRef ref, int depth, std::string& block) {
    const GroupItem& group = doc_.group(ref);
    const bool ordered = group.name == "ordered-list";
    const std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    int counter = 0;
    for (NodeRef child : group.children) {
      if (child.store == StoreKind::Groups &&
          doc_.group(child).label == ItemLabel::List) {
        render_list(child, depth + 1, block);
        continue;
      }
      ++counter;
      const std::string marker = ordered ? std::to_string(counter) + ". " : "- ";
      block += indent + marker + std::string(doc_.text_of(child)) + "\n";
    }
  }

  const DoclingDocument& doc_;
  const MarkdownExportOptions& options_;
  std::set<NodeRef> claimed_;
  std::vector<std::string> blocks_;
};

}  // namespace

std::string export_markdown(const DoclingDocument& doc, const MarkdownExportOptions& options) {
  return MarkdownWriter(doc, options).run();
}

}  // namespace docforge
