#include <doctest.h>

#include <string>

#include "docforge/markup.hpp"

using namespace docforge;

namespace {

std::span<const std::uint8_t> as_bytes(const std::string& s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

DoclingDocument html_doc(const std::string& html) {
  auto source = make_markup_source(InputFormat::Html, as_bytes(html), "test.html");
  return parse_html(source);
}

DoclingDocument md_doc(const std::string& md) {
  auto source = make_markup_source(InputFormat::Markdown, as_bytes(md), "test.md");
  return parse_markdown(source);
}

std::vector<ItemLabel> label_sequence(const DoclingDocument& doc) {
  std::vector<ItemLabel> out;
  for (const ItemVisit& visit : doc.iterate_items()) out.push_back(doc.label_of(visit.ref));
  return out;
}

}  // namespace

TEST_CASE("format detection") {
  std::string pdf = "%PDF-1.7 junk";
  CHECK(detect_format(as_bytes(pdf), "x.md") == InputFormat::Pdf);

  std::string html = "<!DOCTYPE html><html><body></body></html>";
  CHECK(detect_format(as_bytes(html), "") == InputFormat::Html);

  std::string html2 = "\n \n<HTML>";
  CHECK(detect_format(as_bytes(html2), "weird.bin") == InputFormat::Html);

  std::string text = "plain text";
  CHECK(detect_format(as_bytes(text), "notes.md") == InputFormat::Markdown);
  CHECK(detect_format(as_bytes(text), "notes.txt") == InputFormat::Unknown);
  CHECK(detect_format(as_bytes(text), "page.htm") == InputFormat::Html);
}

TEST_CASE("invalid utf8 raises UndecodableInput") {
  std::string bad = "ok so far \xFF\xFE broken";
  CHECK_THROWS_AS((void)make_markup_source(InputFormat::Markdown, as_bytes(bad), "b.md"),
                  Error);
}

TEST_CASE("bom is tolerated") {
  std::string bom = "\xEF\xBB\xBF# Title\n";
  auto doc = md_doc(bom);
  REQUIRE(doc.texts().size() == 1);
  CHECK(doc.texts()[0].text == "Title");
}

TEST_CASE("html heading opens a section group containing following content") {
  auto doc = html_doc("<h1>T</h1><p>a</p>");
  REQUIRE(doc.groups().size() == 1);
  CHECK(doc.groups()[0].name == "section");
  REQUIRE(doc.groups()[0].children.size() == 2);
  CHECK(doc.label_of(doc.groups()[0].children[0]) == ItemLabel::SectionHeader);
  CHECK(doc.text(doc.groups()[0].children[1]).text == "a");
  CHECK(doc.body().size() == 1);
}

TEST_CASE("html heading hierarchy: h2 nests under h1, next h1 pops") {
  auto doc = html_doc("<h1>A</h1><h2>B</h2><p>x</p><h1>C</h1><p>y</p>");
  // A-section and C-section are body roots; B-section nests inside A.
  REQUIRE(doc.body().size() == 2);
  for (const ItemVisit& visit : doc.iterate_items()) {
    if (visit.ref.store == StoreKind::Texts) {
      const TextItem& item = doc.text(visit.ref);
      if (item.label == ItemLabel::SectionHeader && item.text == "B")
        CHECK(visit.depth == 2);
      if (item.text == "y") CHECK(visit.depth == 1);
    }
  }
}

TEST_CASE("html table grid honors spans") {
  auto doc = html_doc(
      "<table><tr><th colspan=\"2\">H</th></tr>"
      "<tr><td>1</td><td>2</td></tr></table>");
  REQUIRE(doc.tables().size() == 1);
  const TableStructure& data = doc.tables()[0].data;
  CHECK(data.num_rows == 2);
  CHECK(data.num_cols == 2);
  REQUIRE(data.cells.size() == 3);
  CHECK(data.cells[0].col_span == 2);
  CHECK(data.cells[0].role == CellRole::ColumnHeader);
}

TEST_CASE("html simple 1x2 table") {
  auto doc = html_doc("<table><tr><td>1</td><td>2</td></tr></table>");
  REQUIRE(doc.tables().size() == 1);
  CHECK(doc.tables()[0].data.num_rows == 1);
  CHECK(doc.tables()[0].data.num_cols == 2);
  CHECK(doc.tables()[0].data.cells[0].text == "1");
  CHECK(doc.tables()[0].data.cells[1].text == "2");
}

TEST_CASE("html rowspan occupancy shifts later cells") {
  auto doc = html_doc(
      "<table><tr><td rowspan=\"2\">a</td><td>b</td></tr>"
      "<tr><td>c</td></tr></table>");
  const TableStructure& data = doc.tables()[0].data;
  CHECK(data.num_rows == 2);
  CHECK(data.num_cols == 2);
  // "c" must land in column 1 because column 0 of row 1 is occupied.
  bool found = false;
  for (const auto& cell : data.cells) {
    if (cell.text == "c") {
      found = true;
      CHECK(cell.start_row == 1);
      CHECK(cell.start_col == 1);
    }
  }
  CHECK(found);
}

TEST_CASE("html lists, figures, code, entities, soup recovery") {
  auto doc = html_doc("<ul><li>x</li><li>y</li></ul>");
  REQUIRE(doc.groups().size() == 1);
  CHECK(doc.groups()[0].label == ItemLabel::List);
  CHECK(doc.groups()[0].children.size() == 2);

  auto fig = html_doc("<figure><img src=\"a.png\"><figcaption>Cap</figcaption></figure>");
  REQUIRE(fig.pictures().size() == 1);
  REQUIRE(fig.pictures()[0].caption.has_value());
  CHECK(fig.text(*fig.pictures()[0].caption).text == "Cap");
  CHECK(fig.text(*fig.pictures()[0].caption).label == ItemLabel::Caption);

  auto code = html_doc("<pre><code>int x = 1;\nint y = 2;</code></pre>");
  REQUIRE(code.texts().size() == 1);
  CHECK(code.texts()[0].label == ItemLabel::Code);
  CHECK(code.texts()[0].text == "int x = 1;\nint y = 2;");

  auto ent = html_doc("<p>a &amp; b &lt;tag&gt; &#65;&#x42;</p>");
  CHECK(ent.texts()[0].text == "a & b <tag> AB");

  auto soup = html_doc("<p>first<p>second</p>");
  REQUIRE(soup.texts().size() == 2);
  CHECK(soup.texts()[0].text == "first");
  CHECK(soup.texts()[1].text == "second");

  auto script = html_doc("<script>var x = '<p>no</p>';</script><p>yes</p>");
  REQUIRE(script.texts().size() == 1);
  CHECK(script.texts()[0].text == "yes");
}

TEST_CASE("markup provenance never carries a bbox") {
  auto doc = html_doc("<h1>T</h1><p>a</p><ul><li>i</li></ul>");
  for (const TextItem& item : doc.texts())
    for (const Provenance& prov : item.prov) CHECK_FALSE(prov.bbox.has_value());
}

TEST_CASE("markdown heading plus paragraph") {
  auto doc = md_doc("# A\n\ntext");
  REQUIRE(doc.groups().size() == 1);
  REQUIRE(doc.groups()[0].children.size() == 2);
  const TextItem& heading = doc.text(doc.groups()[0].children[0]);
  CHECK(heading.label == ItemLabel::SectionHeader);
  CHECK(heading.level == 1);
  CHECK(heading.text == "A");
  CHECK(doc.text(doc.groups()[0].children[1]).text == "text");
}

TEST_CASE("markdown pipe table flags the header row") {
  auto doc = md_doc("|a|b|\n|-|-|\n|1|2|");
  REQUIRE(doc.tables().size() == 1);
  const TableStructure& data = doc.tables()[0].data;
  CHECK(data.num_rows == 2);
  CHECK(data.num_cols == 2);
  CHECK(data.cells[0].role == CellRole::ColumnHeader);
  CHECK(data.cells[0].text == "a");
  CHECK(data.cells[2].role == CellRole::Body);
  CHECK(data.cells[2].text == "1");
}

TEST_CASE("markdown fenced code block") {
  auto doc = md_doc("```\ncode\n```\n");
  REQUIRE(doc.texts().size() == 1);
  CHECK(doc.texts()[0].label == ItemLabel::Code);
  CHECK(doc.texts()[0].text == "code");
}

TEST_CASE("markdown nested lists nest groups per level") {
  auto doc = md_doc("- a\n  - b\n- c\n");
  REQUIRE(doc.groups().size() == 2);
  const GroupItem& outer = doc.groups()[0];
  REQUIRE(outer.children.size() == 3);  // item a, nested group, item c
  CHECK(doc.label_of(outer.children[1]) == ItemLabel::List);
  CHECK(doc.text(outer.children[0]).text == "a");
  CHECK(doc.text(outer.children[2]).text == "c");
}

TEST_CASE("markdown ordered lists keep their flavor") {
  auto doc = md_doc("1. one\n2. two\n");
  REQUIRE(doc.groups().size() == 1);
  CHECK(doc.groups()[0].name == "ordered-list");
  CHECK(doc.groups()[0].children.size() == 2);
}

TEST_CASE("markdown inline flattening") {
  auto doc = md_doc("some **bold** and *em* and `code` and [link](http://x) end");
  REQUIRE(doc.texts().size() == 1);
  CHECK(doc.texts()[0].text == "some bold and em and code and link end");
}

TEST_CASE("markdown block quote becomes a group of texts") {
  auto doc = md_doc("> quoted line\n> more\n");
  REQUIRE(doc.groups().size() == 1);
  CHECK(doc.groups()[0].name == "blockquote");
  REQUIRE(doc.groups()[0].children.size() == 1);
  CHECK(doc.text(doc.groups()[0].children[0]).text == "quoted line more");
}

TEST_CASE("markdown image becomes a picture item") {
  auto doc = md_doc("![alt text](image.png)\n");
  CHECK(doc.pictures().size() == 1);
}

TEST_CASE("markdown setext degrades to paragraph with warning") {
  std::vector<std::string> warnings;
  auto source = make_markup_source(InputFormat::Markdown, as_bytes(std::string("Title\n===\n")),
                                   "s.md");
  auto doc = parse_markdown(source, &warnings);
  REQUIRE(doc.texts().size() == 1);
  CHECK(doc.texts()[0].label == ItemLabel::Text);
  CHECK_FALSE(warnings.empty());
}

TEST_CASE("markdown always parses; worst case one paragraph") {
  auto doc = md_doc("just ordinary text with no structure at all");
  CHECK(doc.texts().size() == 1);
  auto empty = md_doc("");
  CHECK(empty.item_count() == 0);
}

TEST_CASE("heading nesting invariant on a deep fixture") {
  auto doc = md_doc("# 1\n## 2\n### 3\n## 2b\n# 1b\n### 3-under-1b\n");
  // A SectionHeader(level k) group is never a descendant of a
  // SectionHeader(level >= k) group.
  struct Frame { int level; int depth; };
  std::vector<Frame> stack;
  for (const ItemVisit& visit : doc.iterate_items()) {
    while (!stack.empty() && visit.depth <= stack.back().depth) stack.pop_back();
    if (visit.ref.store == StoreKind::Texts) {
      const TextItem& item = doc.text(visit.ref);
      if (item.label == ItemLabel::SectionHeader) {
        for (const Frame& frame : stack) CHECK(frame.level < item.level);
        stack.push_back(Frame{item.level, visit.depth});
      }
    }
  }
  CHECK(label_sequence(doc).size() == doc.item_count());
}
