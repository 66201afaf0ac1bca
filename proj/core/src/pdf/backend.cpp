#include "docforge/pdf_backend.hpp"

#include <algorithm>
#include <chrono>

#include "docforge/errors.hpp"
#include "docforge/parallel.hpp"
#include "docforge/pdf/content.hpp"
#include "docforge/pdf/filters.hpp"
#include "docforge/pdf/fonts.hpp"
#include "docforge/pdf/reader.hpp"
#include "docforge/pdf/tokenizer.hpp"

namespace docforge {

namespace pdf {
namespace {

Matrix page_base_transform(const PageInfo& info) {
  const double llx = info.media_box[0], lly = info.media_box[1];
  const double urx = info.media_box[2], ury = info.media_box[3];
  switch (info.rotate) {
    case 90: return Matrix{0, 1, 1, 0, -lly, -llx};
    case 180: return Matrix{-1, 0, 0, 1, urx, -lly};
    case 270: return Matrix{0, -1, -1, 0, ury, urx};
    default: return Matrix{1, 0, 0, -1, -llx, ury};
  }
}

std::shared_ptr<const PreparedResources> prepare_resources(DocumentReader& reader,
                                                           FontCache& fonts,
                                                           const PdfObject& resources_obj,
                                                           std::vector<std::string>& warnings,
                                                           int depth) {
  auto prepared = std::make_shared<PreparedResources>();
  const PdfObject& resources = reader.resolve(resources_obj);
  if (!resources.is_dict()) return prepared;

  const PdfObject& font_dict = reader.resolve(dict_get(resources.dict(), "Font"));
  if (font_dict.is_dict()) {
    for (const auto& [name, entry] : font_dict.dict())
      prepared->fonts[name] = fonts.load(entry, name);
  }

  const PdfObject& xobjects = reader.resolve(dict_get(resources.dict(), "XObject"));
  if (xobjects.is_dict() && depth < 4) {
    for (const auto& [name, entry] : xobjects.dict()) {
      PreparedResources::XObj xobj;
      try {
        const PdfObject& stream_obj = reader.resolve(entry);
        if (!stream_obj.is_stream()) continue;
        const PdfDict& dict = stream_obj.stream().dict;
        const PdfObject& subtype = dict_get(dict, "Subtype");
        const std::string kind = subtype.is_name() ? subtype.name() : "";
        if (kind == "Image") {
          xobj.kind = PreparedResources::XObj::Kind::Image;
        } else if (kind == "Form") {
          xobj.kind = PreparedResources::XObj::Kind::Form;
          xobj.content = reader.decoded_stream(stream_obj);
          const PdfObject& matrix = reader.resolve(dict_get(dict, "Matrix"));
          if (matrix.is_array() && matrix.array().size() == 6) {
            for (int i = 0; i < 6; ++i) {
              const PdfObject& v = reader.resolve(matrix.array()[i]);
              if (v.is_number()) xobj.matrix[i] = v.as_double();
            }
          }
          xobj.resources = prepare_resources(reader, fonts, dict_get(dict, "Resources"),
                                             warnings, depth + 1);
        } else {
          continue;
        }
      } catch (const ParseFailure& e) {
        warnings.push_back("XObject /" + name + " unusable: " + e.what());
        continue;
      }
      prepared->xobjects.emplace(name, std::move(xobj));
    }
  }
  return prepared;
}

std::vector<std::uint8_t> page_content_bytes(DocumentReader& reader, const PdfDict& page_dict) {
  const PdfObject& contents = reader.resolve(dict_get(page_dict, "Contents"));
  if (contents.is_stream()) return reader.decoded_stream(contents);
  if (contents.is_array()) {
    std::vector<std::uint8_t> out;
    for (const PdfObject& part : contents.array()) {
      std::vector<std::uint8_t> piece = reader.decoded_stream(part);
      out.insert(out.end(), piece.begin(), piece.end());
      out.push_back('\n');  // streams are logically separated by whitespace
    }
    return out;
  }
  if (contents.is_null()) return {};
  throw ParseFailure("/Contents is neither a stream nor an array");
}

}  // namespace
}  // namespace pdf

ParsedPdf parse_pdf(std::span<const std::uint8_t> bytes, const PdfParseOptions& options) {
  using namespace pdf;
  using Clock = std::chrono::steady_clock;

  ParsedPdf out;
  const auto decode_start = Clock::now();
  DocumentReader reader = DocumentReader::open(bytes);
  FontCache fonts(reader);

  std::vector<PageInfo> infos = reader.pages();

  // Phase 1 (single-threaded): pull everything out of the object graph.
  std::vector<PreparedPage> prepared;
  prepared.reserve(infos.size());
  for (std::size_t i = 0; i < infos.size(); ++i) {
    const PageInfo& info = infos[i];
    PreparedPage page;
    page.page_no = static_cast<int>(i + 1);
    const double w = info.media_box[2] - info.media_box[0];
    const double h = info.media_box[3] - info.media_box[1];
    const bool swap = info.rotate == 90 || info.rotate == 270;
    page.width = quantize_coord(swap ? h : w);
    page.height = quantize_coord(swap ? w : h);
    if (page.width <= 0 || page.height <= 0) {
      page.warnings.push_back("page " + std::to_string(page.page_no) +
                              ": degenerate MediaBox; using Letter");
      page.width = 612;
      page.height = 792;
    }
    page.base = page_base_transform(info);
    page.rotated = info.rotate != 0;
    try {
      page.content = page_content_bytes(reader, info.dict);
    } catch (const ParseFailure& e) {
      page.warnings.push_back("page " + std::to_string(page.page_no) +
                              ": content stream unreadable (" + e.what() + ")");
      page.content.clear();
      out.failed_pages.push_back(page.page_no);
    }
    page.resources =
        prepare_resources(reader, fonts, dict_get(info.dict, "Resources"), page.warnings, 0);
    prepared.push_back(std::move(page));
  }

  out.warnings = reader.warnings();
  for (std::string& w : fonts.take_warnings()) out.warnings.push_back(std::move(w));
  out.decode_ns =
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - decode_start)
          .count();

  // Phase 2: pure per-page interpretation; safe to run concurrently.
  std::vector<ExtractionResult> results(prepared.size());
  out.page_extract_ns.assign(prepared.size(), 0);
  parallel_for(prepared.size(), options.thread_budget, [&](std::size_t i) {
    const auto start = Clock::now();
    results[i] = extract_cells(prepared[i], options.cell_split_gap_em);
    out.page_extract_ns[i] =
        std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
  });

  out.pages.reserve(prepared.size());
  for (std::size_t i = 0; i < prepared.size(); ++i) {
    ParsedPage page;
    page.page_no = prepared[i].page_no;
    page.width = prepared[i].width;
    page.height = prepared[i].height;
    page.cells = std::move(results[i].cells);
    page.bitmap_regions = std::move(results[i].bitmap_regions);
    for (std::string& w : results[i].warnings) out.warnings.push_back(std::move(w));
    out.pages.push_back(std::move(page));
  }
  return out;
}

}  // namespace docforge
