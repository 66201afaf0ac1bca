#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "docforge/markup.hpp"
#include "section_stack.hpp"

namespace docforge {

namespace {

// --- minimal error-tolerant HTML DOM ----------------------------------------

struct Node {
  std::string tag;   // empty for text nodes
  std::string text;  // text nodes only
  std::map<std::string, std::string> attrs;
  std::vector<std::size_t> children;
};

struct Dom {
  std::vector<Node> nodes;  // nodes[0] is the synthetic root

  std::size_t add(Node node, std::size_t parent) {
    nodes.push_back(std::move(node));
    const std::size_t id = nodes.size() - 1;
    nodes[parent].children.push_back(id);
    return id;
  }
};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

const std::map<std::string, char32_t>& named_entities() {
  static const std::map<std::string, char32_t> kMap = {
      {"amp", '&'},     {"lt", '<'},      {"gt", '>'},      {"quot", '"'},
      {"apos", '\''},   {"nbsp", 0x00A0}, {"copy", 0x00A9}, {"reg", 0x00AE},
      {"trade", 0x2122},{"hellip", 0x2026},{"mdash", 0x2014},{"ndash", 0x2013},
      {"lsquo", 0x2018},{"rsquo", 0x2019},{"ldquo", 0x201C},{"rdquo", 0x201D},
      {"bull", 0x2022}, {"middot", 0x00B7},{"times", 0x00D7},{"divide", 0x00F7},
      {"eacute", 0x00E9},{"egrave", 0x00E8},{"agrave", 0x00E0},{"uuml", 0x00FC},
      {"ouml", 0x00F6}, {"auml", 0x00E4}, {"szlig", 0x00DF}, {"ccedil", 0x00E7},
      {"deg", 0x00B0},  {"plusmn", 0x00B1},{"sup2", 0x00B2}, {"frac12", 0x00BD},
  };
  return kMap;
}

void append_utf8_cp(std::string& out, char32_t cp) {
  if (cp == 0 || cp > 0x10FFFF) cp = 0xFFFD;
  if (cp <= 0x7F) out.push_back(static_cast<char>(cp));
  else if (cp <= 0x7FF) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp <= 0xFFFF) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string decode_entities(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    if (raw[i] != '&') {
      out.push_back(raw[i++]);
      continue;
    }
    const std::size_t semi = raw.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back(raw[i++]);
      continue;
    }
    std::string_view body = raw.substr(i + 1, semi - i - 1);
    if (!body.empty() && body[0] == '#') {
      char32_t cp = 0;
      bool ok = body.size() > 1;
      if (body.size() > 2 && (body[1] == 'x' || body[1] == 'X')) {
        for (std::size_t k = 2; k < body.size() && ok; ++k) {
          const char c = body[k];
          int v = (c >= '0' && c <= '9')   ? c - '0'
                  : (c >= 'a' && c <= 'f') ? c - 'a' + 10
                  : (c >= 'A' && c <= 'F') ? c - 'A' + 10
                                           : -1;
          if (v < 0) ok = false;
          else cp = cp * 16 + static_cast<char32_t>(v);
        }
      } else {
        for (std::size_t k = 1; k < body.size() && ok; ++k) {
          if (!std::isdigit(static_cast<unsigned char>(body[k]))) ok = false;
          else cp = cp * 10 + static_cast<char32_t>(body[k] - '0');
        }
      }
      if (ok) {
        append_utf8_cp(out, cp);
        i = semi + 1;
        continue;
      }
    } else if (auto it = named_entities().find(std::string(body));
               it != named_entities().end()) {
      append_utf8_cp(out, it->second);
      i = semi + 1;
      continue;
    }
    out.push_back(raw[i++]);  // unknown entity kept literally
  }
  return out;
}

bool is_void_tag(const std::string& tag) {
  static const std::set<std::string> kVoid = {"img",  "br",    "hr",   "meta", "link",
                                              "input","area",  "base", "col",  "embed",
                                              "source","track","wbr"};
  return kVoid.contains(tag);
}

bool is_block_tag(const std::string& tag) {
  static const std::set<std::string> kBlock = {
      "p",  "h1", "h2", "h3", "h4",  "h5",    "h6",     "ul",   "ol",   "li",
      "table", "tr", "td", "th", "div", "pre", "blockquote", "figure", "section",
      "article", "header", "footer", "main", "thead", "tbody", "caption", "figcaption"};
  return kBlock.contains(tag);
}

Dom parse_dom(std::string_view html) {
  Dom dom;
  dom.nodes.push_back(Node{});  // root
  std::vector<std::size_t> stack{0};

  auto top_tag = [&]() -> const std::string& { return dom.nodes[stack.back()].tag; };
  auto close_one = [&](const std::string& tag) {
    for (std::size_t i = stack.size(); i-- > 1;) {
      if (dom.nodes[stack[i]].tag == tag) {
        stack.resize(i);
        return;
      }
    }
  };

  std::size_t i = 0;
  auto emit_text = [&](std::string_view raw) {
    if (raw.empty()) return;
    Node text;
    text.text = decode_entities(raw);
    dom.add(std::move(text), stack.back());
  };

  while (i < html.size()) {
    if (html[i] != '<') {
      const std::size_t next = html.find('<', i);
      const std::size_t end = next == std::string_view::npos ? html.size() : next;
      emit_text(html.substr(i, end - i));
      i = end;
      continue;
    }
    if (html.compare(i, 4, "<!--") == 0) {
      const std::size_t end = html.find("-->", i + 4);
      i = end == std::string_view::npos ? html.size() : end + 3;
      continue;
    }
    if (html.compare(i, 2, "<!") == 0 || html.compare(i, 2, "<?") == 0) {
      const std::size_t end = html.find('>', i);
      i = end == std::string_view::npos ? html.size() : end + 1;
      continue;
    }

    const std::size_t gt = html.find('>', i);
    if (gt == std::string_view::npos) {
      emit_text(html.substr(i));
      break;
    }
    std::string_view inside = html.substr(i + 1, gt - i - 1);
    i = gt + 1;

    bool closing = false;
    if (!inside.empty() && inside[0] == '/') {
      closing = true;
      inside.remove_prefix(1);
    }
    bool self_closing = false;
    if (!inside.empty() && inside.back() == '/') {
      self_closing = true;
      inside.remove_suffix(1);
    }

    // Tag name.
    std::size_t p = 0;
    while (p < inside.size() && (std::isalnum(static_cast<unsigned char>(inside[p])) ||
                                 inside[p] == '-'))
      ++p;
    std::string tag = lower(inside.substr(0, p));
    if (tag.empty()) continue;

    if (closing) {
      close_one(tag);
      continue;
    }

    // Attributes.
    Node node;
    node.tag = tag;
    while (p < inside.size()) {
      while (p < inside.size() && std::isspace(static_cast<unsigned char>(inside[p]))) ++p;
      std::size_t name_start = p;
      while (p < inside.size() && inside[p] != '=' && inside[p] != ' ' &&
             !std::isspace(static_cast<unsigned char>(inside[p])))
        ++p;
      if (p == name_start) break;
      std::string name = lower(inside.substr(name_start, p - name_start));
      std::string value;
      while (p < inside.size() && std::isspace(static_cast<unsigned char>(inside[p]))) ++p;
      if (p < inside.size() && inside[p] == '=') {
        ++p;
        while (p < inside.size() && std::isspace(static_cast<unsigned char>(inside[p]))) ++p;
        if (p < inside.size() && (inside[p] == '"' || inside[p] == '\'')) {
          const char quote = inside[p++];
          const std::size_t end = inside.find(quote, p);
          value = std::string(inside.substr(p, end == std::string_view::npos
                                                   ? inside.size() - p
                                                   : end - p));
          p = end == std::string_view::npos ? inside.size() : end + 1;
        } else {
          const std::size_t start = p;
          while (p < inside.size() && !std::isspace(static_cast<unsigned char>(inside[p]))) ++p;
          value = std::string(inside.substr(start, p - start));
        }
      }
      node.attrs[name] = decode_entities(value);
    }

    // Tag-soup recovery.
    if (tag == "p" || is_block_tag(tag)) {
      if (top_tag() == "p" && tag != "span" && is_block_tag(tag)) close_one("p");
    }
    if (tag == "li" && top_tag() == "li") close_one("li");
    if ((tag == "td" || tag == "th") && (top_tag() == "td" || top_tag() == "th"))
      close_one(top_tag());
    if (tag == "tr") {
      while (top_tag() == "td" || top_tag() == "th") close_one(top_tag());
      if (top_tag() == "tr") close_one("tr");
    }

    if (tag == "script" || tag == "style") {
      // Raw text elements: discard everything to the matching close tag.
      const std::string close = "</" + tag;
      std::size_t end = i;
      const std::string lowered = lower(html.substr(i));
      const std::size_t found = lowered.find(close);
      if (found == std::string::npos) {
        i = html.size();
      } else {
        end = i + found;
        const std::size_t tag_end = html.find('>', end);
        i = tag_end == std::string_view::npos ? html.size() : tag_end + 1;
      }
      continue;
    }

    const std::size_t id = dom.add(std::move(node), stack.back());
    if (!self_closing && !is_void_tag(tag)) stack.push_back(id);
  }
  return dom;
}

// --- document construction ----------------------------------------------------

class HtmlBuilder {
public:
  HtmlBuilder(const Dom& dom, DoclingDocument& doc, std::vector<std::string>* warnings)
      : dom_(dom), doc_(doc), warnings_(warnings) {}

  void run() { walk_children(0); }

private:
  void warn(const std::string& message) {
    if (warnings_) warnings_->push_back(message);
  }

  // Whitespace-collapsed text of a subtree, skipping nested block elements.
  void flatten_inline(std::size_t id, std::string& out) const {
    const Node& node = dom_.nodes[id];
    if (node.tag.empty()) {
      out += node.text;
      return;
    }
    if (node.tag == "br") {
      out += ' ';
      return;
    }
    if (is_block_tag(node.tag) && node.tag != "span") return;
    for (std::size_t child : node.children) flatten_inline(child, out);
  }

  static std::string collapse_ws(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (char c : raw) {
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f') {
        pending_space = !out.empty();
      } else {
        if (pending_space) out.push_back(' ');
        pending_space = false;
        out.push_back(c);
      }
    }
    return out;
  }

  std::string inline_text(std::size_t id) const {
    std::string raw;
    for (std::size_t child : dom_.nodes[id].children) flatten_inline(child, raw);
    return collapse_ws(raw);
  }

  void add_text(ItemLabel label, std::string text, AttachPoint at) {
    if (text.empty()) return;
    TextItem item;
    item.label = label;
    const std::size_t len = text.size();
    item.text = std::move(text);
    item.prov.push_back(Provenance{1, std::nullopt, CharSpan{0, len}});
    doc_.add_item(std::move(item), at);
  }

  void walk_children(std::size_t id) {
    std::string stray;
    for (std::size_t child : dom_.nodes[id].children) {
      const Node& node = dom_.nodes[child];
      if (node.tag.empty()) {
        stray += node.text;
        continue;
      }
      flush_stray(stray);
      handle_element(child);
    }
    flush_stray(stray);
  }

  void flush_stray(std::string& raw) {
    std::string text = collapse_ws(raw);
    raw.clear();
    add_text(ItemLabel::Text, std::move(text), sections_.current());
  }

  void handle_element(std::size_t id) {
    const Node& node = dom_.nodes[id];
    const std::string& tag = node.tag;

    if (tag == "head" || tag == "script" || tag == "style" || tag == "title" ||
        tag == "nav") {
      return;
    }
    if (tag.size() == 2 && tag[0] == 'h' && tag[1] >= '1' && tag[1] <= '6') {
      TextItem heading;
      heading.label = ItemLabel::SectionHeader;
      heading.level = tag[1] - '0';
      heading.text = inline_text(id);
      heading.prov.push_back(Provenance{1, std::nullopt, CharSpan{0, heading.text.size()}});
      sections_.open_section(doc_, std::move(heading));
      return;
    }
    if (tag == "p") {
      add_text(ItemLabel::Text, inline_text(id), sections_.current());
      return;
    }
    if (tag == "ul" || tag == "ol") {
      build_list(id, sections_.current());
      return;
    }
    if (tag == "table") {
      build_table(id);
      return;
    }
    if (tag == "figure") {
      build_figure(id);
      return;
    }
    if (tag == "img") {
      PictureItem pic;
      pic.prov.push_back(Provenance{1, std::nullopt, std::nullopt});
      doc_.add_item(std::move(pic), sections_.current());
      return;
    }
    if (tag == "pre") {
      std::string raw = raw_text(id);
      if (!raw.empty() && raw.front() == '\n') raw.erase(raw.begin());
      while (!raw.empty() && (raw.back() == '\n' || raw.back() == ' ')) raw.pop_back();
      add_text(ItemLabel::Code, std::move(raw), sections_.current());
      return;
    }
    if (tag == "blockquote") {
      NodeRef group = doc_.add_item(GroupItem{ItemLabel::Group, "blockquote", {}},
                                    sections_.current());
      build_quote(id, group);
      return;
    }
    // Transparent containers.
    walk_children(id);
  }

  std::string raw_text(std::size_t id) const {
    std::string out;
    auto walk = [&](auto&& self, std::size_t nid) -> void {
      const Node& node = dom_.nodes[nid];
      if (node.tag.empty()) out += node.text;
      for (std::size_t child : node.children) self(self, child);
    };
    walk(walk, id);
    return out;
  }

  void build_list(std::size_t id, AttachPoint at) {
    const Node& node = dom_.nodes[id];
    const bool ordered = node.tag == "ol";
    NodeRef group = doc_.add_item(
        GroupItem{ItemLabel::List, ordered ? "ordered-list" : "list", {}}, at);
    for (std::size_t child : node.children) {
      const Node& li = dom_.nodes[child];
      if (li.tag != "li") continue;
      add_text(ItemLabel::ListItem, inline_text(child), AttachPoint::under(group));
      // Nested lists inside the item become nested groups.
      for (std::size_t grand : li.children) {
        const Node& sub = dom_.nodes[grand];
        if (sub.tag == "ul" || sub.tag == "ol") build_list(grand, AttachPoint::under(group));
      }
    }
  }

  void build_quote(std::size_t id, NodeRef group) {
    bool had_paragraphs = false;
    for (std::size_t child : dom_.nodes[id].children) {
      const Node& node = dom_.nodes[child];
      if (node.tag == "p") {
        add_text(ItemLabel::Text, inline_text(child), AttachPoint::under(group));
        had_paragraphs = true;
      }
    }
    if (!had_paragraphs)
      add_text(ItemLabel::Text, inline_text(id), AttachPoint::under(group));
  }

  void build_figure(std::size_t id) {
    PictureItem pic;
    pic.prov.push_back(Provenance{1, std::nullopt, std::nullopt});
    NodeRef pic_ref = doc_.add_item(std::move(pic), sections_.current());

    std::string caption_text;
    auto find_caption = [&](auto&& self, std::size_t nid) -> void {
      for (std::size_t child : dom_.nodes[nid].children) {
        if (dom_.nodes[child].tag == "figcaption") caption_text = inline_text(child);
        else self(self, child);
      }
    };
    find_caption(find_caption, id);

    if (!caption_text.empty()) {
      TextItem caption;
      caption.label = ItemLabel::Caption;
      caption.text = caption_text;
      caption.prov.push_back(Provenance{1, std::nullopt, CharSpan{0, caption_text.size()}});
      doc_.add_item(std::move(caption), AttachPoint::caption_of(pic_ref));
    }
  }

  void build_table(std::size_t id) {
    // Collect rows in document order from tr elements (thead/tbody transparent).
    std::vector<std::size_t> rows;
    std::string caption_text;
    auto collect = [&](auto&& self, std::size_t nid) -> void {
      for (std::size_t child : dom_.nodes[nid].children) {
        const Node& node = dom_.nodes[child];
        if (node.tag == "tr") rows.push_back(child);
        else if (node.tag == "caption") caption_text = inline_text(child);
        else if (node.tag == "thead" || node.tag == "tbody" || node.tag == "tfoot")
          self(self, child);
      }
    };
    collect(collect, id);

    TableStructure data;
    std::vector<std::vector<bool>> occupied;
    auto ensure = [&](int row, int col) {
      while (static_cast<int>(occupied.size()) <= row) occupied.emplace_back();
      for (auto& r : occupied)
        while (static_cast<int>(r.size()) <= col) r.push_back(false);
    };

    int num_cols = 0;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      int col = 0;
      ensure(r, 0);
      for (std::size_t cell_id : dom_.nodes[rows[r]].children) {
        const Node& cell = dom_.nodes[cell_id];
        if (cell.tag != "td" && cell.tag != "th") continue;
        while (col < static_cast<int>(occupied[r].size()) && occupied[r][col]) ++col;

        int row_span = 1, col_span = 1;
        if (auto it = cell.attrs.find("rowspan"); it != cell.attrs.end())
          row_span = std::max(1, std::atoi(it->second.c_str()));
        if (auto it = cell.attrs.find("colspan"); it != cell.attrs.end())
          col_span = std::max(1, std::atoi(it->second.c_str()));

        TableCellSpec spec;
        spec.start_row = r;
        spec.start_col = col;
        spec.row_span = row_span;
        spec.col_span = col_span;
        spec.text = inline_text(cell_id);
        const bool is_th = cell.tag == "th";
        if (is_th && r == 0) spec.role = CellRole::ColumnHeader;
        else if (is_th && col == 0) spec.role = CellRole::RowHeader;
        else if (is_th) spec.role = CellRole::ColumnHeader;

        ensure(r + row_span - 1, col + col_span - 1);
        for (int rr = r; rr < r + row_span; ++rr)
          for (int cc = col; cc < col + col_span; ++cc) occupied[rr][cc] = true;

        num_cols = std::max(num_cols, col + col_span);
        data.cells.push_back(std::move(spec));
        col += col_span;
      }
    }
    data.num_rows = static_cast<int>(rows.size());
    data.num_cols = num_cols;

    TableItem table;
    table.data = std::move(data);
    table.prov.push_back(Provenance{1, std::nullopt, std::nullopt});
    NodeRef table_ref = doc_.add_item(std::move(table), sections_.current());

    if (!caption_text.empty()) {
      TextItem caption;
      caption.label = ItemLabel::Caption;
      caption.text = caption_text;
      caption.prov.push_back(Provenance{1, std::nullopt, CharSpan{0, caption_text.size()}});
      doc_.add_item(std::move(caption), AttachPoint::caption_of(table_ref));
    }
  }

  const Dom& dom_;
  DoclingDocument& doc_;
  std::vector<std::string>* warnings_;
  internal::SectionStack sections_;
};

}  // namespace

DoclingDocument parse_html(const MarkupSource& source, std::vector<std::string>* warnings) {
  DoclingDocument doc(source.base_name,
                      DocumentOrigin{"text/html", source.filename, source.binary_hash});
  Dom dom = parse_dom(source.text);
  HtmlBuilder builder(dom, doc, warnings);
  builder.run();
  return doc;
}

}  // namespace docforge
