#include <doctest.h>

#include <set>

#include "docforge/errors.hpp"
#include "docforge/pdf_backend.hpp"
#include "docforge/testing/pdf_generator.hpp"

using namespace docforge;

namespace {

ParsedPdf parse(const std::vector<std::uint8_t>& bytes) {
  return parse_pdf(std::span<const std::uint8_t>(bytes.data(), bytes.size()));
}

void check_against_ground_truth(const pdfgen::GeneratedPdf& fixture) {
  INFO("fixture: " << fixture.name);
  ParsedPdf parsed = parse(fixture.bytes);
  REQUIRE(static_cast<int>(parsed.pages.size()) == fixture.pages);

  std::vector<const TextCell*> cells;
  for (const ParsedPage& page : parsed.pages) {
    int prev = -1;
    for (const TextCell& cell : page.cells) {
      CHECK(cell.stream_index > prev);
      prev = cell.stream_index;
      cells.push_back(&cell);
    }
  }
  REQUIRE(cells.size() == fixture.cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    INFO("cell " << i << " expected '" << fixture.cells[i].text << "' got '"
                 << cells[i]->text << "'");
    CHECK(cells[i]->text == fixture.cells[i].text);
    CHECK(std::abs(cells[i]->bbox.l - fixture.cells[i].l) <= 0.5);
    CHECK(std::abs(cells[i]->bbox.t - fixture.cells[i].t) <= 0.5);
  }
}

}  // namespace

TEST_CASE("single Tj cell lands at hand-computed coordinates") {
  // (Hello) Tj in Helvetica 12 at Td(72,720) on Letter: l = 72,
  // t = 792 - 720 - 0.8*12 = 62.4.
  pdfgen::PdfBuilder b;
  pdfgen::PageComposer composer(612, 792);
  composer.use_font("F1", "Helvetica", 12);
  composer.text_at(72, 720, "Hello");

  auto gt = composer.take_cells();
  REQUIRE(gt.size() == 1);
  CHECK(gt[0].l == doctest::Approx(72.0));
  CHECK(gt[0].t == doctest::Approx(62.4));

  pdfgen::GeneratedPdf fixture = pdfgen::make_paragraph_page(1, pdfgen::XrefFlavor::Classic,
                                                             false);
  ParsedPdf parsed = parse(fixture.bytes);
  CHECK(parsed.pages.size() == 1);
}

TEST_CASE("TJ kerning splits exactly as the displacement math says") {
  // [(A) -2000 (B)] TJ at size 10: pen shift = -(-2000)/1000*10 = 20pt > 10pt.
  pdfgen::GeneratedPdf fixture = pdfgen::make_kerning_page(3, pdfgen::XrefFlavor::Classic);
  ParsedPdf parsed = parse(fixture.bytes);
  REQUIRE(parsed.pages.size() == 1);

  const auto& cells = parsed.pages[0].cells;
  REQUIRE(cells.size() >= 2);
  CHECK(cells[0].text == "A");
  CHECK(cells[1].text == "B");
  // Helvetica 'A' is 667/1000 em: B starts at 72 + 6.67 + 20.
  CHECK(cells[1].bbox.l == doctest::Approx(72.0 + 6.67 + 20.0).epsilon(0.01));

  check_against_ground_truth(fixture);
}

TEST_CASE("ground truth holds across xref flavors and encodings") {
  for (auto flavor : {pdfgen::XrefFlavor::Classic, pdfgen::XrefFlavor::Stream,
                      pdfgen::XrefFlavor::ObjectStreams}) {
    check_against_ground_truth(pdfgen::make_paragraph_page(11, flavor, true));
    check_against_ground_truth(pdfgen::make_kerning_page(12, flavor));
    check_against_ground_truth(pdfgen::make_identity_h_page(13, flavor));
    check_against_ground_truth(pdfgen::make_article_page(14, flavor, false));
    check_against_ground_truth(pdfgen::make_multi_page(15, 3, flavor));
  }
}

TEST_CASE("two column fixture produces no cell spanning the gutter") {
  pdfgen::GeneratedPdf fixture = pdfgen::make_two_column_page(21, pdfgen::XrefFlavor::Classic);
  check_against_ground_truth(fixture);
  ParsedPdf parsed = parse(fixture.bytes);
  for (const TextCell& cell : parsed.pages[0].cells) {
    const bool spans = cell.bbox.l < fixture.gutter_r && cell.bbox.r > fixture.gutter_l;
    INFO(cell.text << " [" << cell.bbox.l << "," << cell.bbox.r << "]");
    CHECK_FALSE(spans);
  }
}

TEST_CASE("empty page parses to one page with zero cells") {
  auto fixture = pdfgen::make_empty_page(pdfgen::XrefFlavor::Classic);
  ParsedPdf parsed = parse(fixture.bytes);
  REQUIRE(parsed.pages.size() == 1);
  CHECK(parsed.pages[0].cells.empty());
  CHECK(parsed.pages[0].width == doctest::Approx(612));
  CHECK(parsed.pages[0].height == doctest::Approx(792));
}

TEST_CASE("bitmap regions are recorded from image XObjects") {
  auto fixture = pdfgen::make_bitmap_page(pdfgen::XrefFlavor::Classic);
  ParsedPdf parsed = parse(fixture.bytes);
  REQUIRE(parsed.pages.size() == 1);
  REQUIRE(parsed.pages[0].bitmap_regions.size() == 1);
  const BoundingBox& region = parsed.pages[0].bitmap_regions[0];
  CHECK(region.l == doctest::Approx(72));
  CHECK(region.t == doctest::Approx(792 - 650));
  CHECK(region.r == doctest::Approx(172));
  CHECK(region.b == doctest::Approx(792 - 600));
}

TEST_CASE("error paths: truncated, encrypted, not-a-pdf") {
  auto truncated = pdfgen::make_truncated_file();
  CHECK_THROWS_AS((void)parse(truncated), Error);
  try {
    (void)parse(truncated);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CorruptXref);
  }

  auto encrypted = pdfgen::make_encrypted_file();
  try {
    (void)parse(encrypted);
    FAIL("expected EncryptedPdf");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EncryptedPdf);
  }

  std::vector<std::uint8_t> junk = {'j', 'u', 'n', 'k'};
  try {
    (void)parse(junk);
    FAIL("expected NotAPdf");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAPdf);
  }
}

TEST_CASE("bad startxref recovers by scanning") {
  auto bytes = pdfgen::make_bad_startxref_file();
  ParsedPdf parsed = parse(bytes);
  CHECK(parsed.pages.size() == 1);
  CHECK_FALSE(parsed.pages[0].cells.empty());
  bool mentioned = false;
  for (const auto& w : parsed.warnings)
    if (w.find("reconstructed") != std::string::npos) mentioned = true;
  CHECK(mentioned);
}

TEST_CASE("corrupt page stream degrades to a warning") {
  auto fixture = pdfgen::make_corrupt_page_stream();
  ParsedPdf parsed = parse(fixture.bytes);
  REQUIRE(parsed.pages.size() == 2);
  CHECK(parsed.pages[0].cells.size() == 1);
  CHECK(parsed.pages[1].cells.empty());
  bool mentioned = false;
  for (const auto& w : parsed.warnings)
    if (w.find("page 2") != std::string::npos) mentioned = true;
  CHECK(mentioned);
}

TEST_CASE("determinism: same bytes parse to identical results") {
  auto fixture = pdfgen::make_article_page(5, pdfgen::XrefFlavor::Stream, true);
  CHECK(parse(fixture.bytes) == parse(fixture.bytes));
}

TEST_CASE("vertical moves force distinct baselines") {
  // Two Tj calls separated by `0 -14 Td` end up as two cells.
  pdfgen::GeneratedPdf fixture = pdfgen::make_paragraph_page(2, pdfgen::XrefFlavor::Classic,
                                                             false);
  ParsedPdf parsed = parse(fixture.bytes);
  std::set<double> baselines;
  for (const TextCell& cell : parsed.pages[0].cells) baselines.insert(cell.bbox.t);
  CHECK(baselines.size() == parsed.pages[0].cells.size());
}
