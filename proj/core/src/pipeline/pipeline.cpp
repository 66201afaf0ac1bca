#include <chrono>
#include <fstream>

#include "docforge/parallel.hpp"
#include "docforge/pipeline.hpp"
#include "docforge/table_engine.hpp"

namespace docforge {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ns_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start).count();
}

std::string stem_of(std::string_view filename) {
  std::string_view stem = filename;
  if (const auto slash = stem.find_last_of("/\\"); slash != std::string_view::npos)
    stem = stem.substr(slash + 1);
  if (const auto dot = stem.rfind('.'); dot != std::string_view::npos && dot > 0)
    stem = stem.substr(0, dot);
  return std::string(stem);
}

int stage_index(Stage stage) { return static_cast<int>(stage); }

}  // namespace

std::string_view to_string(ConversionStatus status) {
  switch (status) {
    case ConversionStatus::Success: return "success";
    case ConversionStatus::PartialSuccess: return "partial-success";
    case ConversionStatus::Failure: return "failure";
  }
  return "failure";
}

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::BackendParse: return "backend_parse";
    case Stage::Layout: return "layout";
    case Stage::TableStructure: return "table_structure";
    case Stage::Assembly: return "assembly";
  }
  return "backend_parse";
}

std::vector<PageResult> run_pdf_pipeline(const ParsedPdf& parsed,
                                         const ConversionOptions& options) {
  // Sidecar predictions load once; the cost lands in page 1's layout stage.
  std::optional<SidecarPredictions> sidecar;
  std::int64_t sidecar_load_ns = 0;
  if (options.layout_source == LayoutSource::Sidecar) {
    const auto start = Clock::now();
    sidecar = SidecarPredictions::load_file(options.sidecar_path);
    sidecar_load_ns = ns_since(start);
  }

  std::vector<PageResult> results(parsed.pages.size());

  parallel_for(parsed.pages.size(), options.thread_budget, [&](std::size_t i) {
    const ParsedPage& page = parsed.pages[i];
    PageResult& result = results[i];
    result.page_no = page.page_no;
    result.width = page.width;
    result.height = page.height;
    result.cells = page.cells;
    result.timing.page_no = page.page_no;

    result.timing.stage_ns[stage_index(Stage::BackendParse)] =
        i < parsed.page_extract_ns.size() ? parsed.page_extract_ns[i] : 0;
    result.timing.stage_applied[stage_index(Stage::BackendParse)] = true;

    try {
      // Layout: prediction + post-processing.
      const auto layout_start = Clock::now();
      LayoutPrediction prediction = sidecar ? sidecar->for_page(page)
                                            : predict_layout_heuristic(page);
      std::vector<LayoutCluster> clusters = postprocess_clusters(prediction, page);
      result.timing.stage_ns[stage_index(Stage::Layout)] = ns_since(layout_start);
      result.timing.stage_applied[stage_index(Stage::Layout)] = true;

      // Table structure per Table cluster.
      std::vector<int> table_ids;
      for (const LayoutCluster& cluster : clusters)
        if (cluster.label == ItemLabel::Table) table_ids.push_back(cluster.id);

      if (options.do_table_structure && !table_ids.empty()) {
        const auto table_start = Clock::now();
        for (const LayoutCluster& cluster : clusters) {
          if (cluster.label != ItemLabel::Table) continue;
          result.tables[cluster.id] = recover_table(cluster, page.cells, &result.warnings);
        }
        result.timing.stage_ns[stage_index(Stage::TableStructure)] = ns_since(table_start);
        result.timing.stage_applied[stage_index(Stage::TableStructure)] = true;
      }

      // Reading order and caption matching feed assembly.
      const auto assembly_start = Clock::now();
      std::vector<LayoutCluster> body;
      std::vector<LayoutCluster> furniture;
      for (LayoutCluster& cluster : clusters) {
        if (is_furniture_label(cluster.label)) furniture.push_back(std::move(cluster));
        else body.push_back(std::move(cluster));
      }
      result.clusters = reading_order(std::move(body));
      result.caption_for = match_captions(result.clusters);
      for (LayoutCluster& cluster : furniture) result.clusters.push_back(std::move(cluster));
      result.timing.stage_ns[stage_index(Stage::Assembly)] = ns_since(assembly_start);
      result.timing.stage_applied[stage_index(Stage::Assembly)] = true;
    } catch (const std::exception& e) {
      result.failed = true;
      result.clusters.clear();
      result.tables.clear();
      result.warnings.push_back("page " + std::to_string(page.page_no) +
                                " failed: " + e.what());
    }
  });

  if (!results.empty())
    results[0].timing.stage_ns[stage_index(Stage::Layout)] += sidecar_load_ns;

  // Pages that failed at the backend level are failed here too.
  for (int page_no : parsed.failed_pages) {
    for (PageResult& result : results) {
      if (result.page_no == page_no && !result.failed) {
        result.failed = true;
        result.warnings.push_back("page " + std::to_string(page_no) +
                                  ": backend could not decode the content stream");
      }
    }
  }
  return results;
}

ConversionResult convert(std::span<const std::uint8_t> bytes, std::string_view filename,
                         const ConversionOptions& options,
                         std::optional<InputFormat> forced_format) {
  ConversionResult out;
  const auto start = Clock::now();

  const InputFormat format =
      forced_format ? *forced_format : detect_format(bytes, filename);
  out.format = format;

  try {
    switch (format) {
      case InputFormat::Pdf: {
        PdfParseOptions parse_options;
        parse_options.cell_split_gap_em = options.cell_split_gap_em;
        parse_options.thread_budget = options.thread_budget;
        ParsedPdf parsed = parse_pdf(bytes, parse_options);
        out.warnings = parsed.warnings;

        std::vector<PageResult> pages = run_pdf_pipeline(parsed, options);

        DocumentOrigin origin{"application/pdf", std::string(filename),
                              fnv1a_hash(bytes.data(), bytes.size())};

        const auto assembly_start = Clock::now();
        DoclingDocument doc =
            assemble(pages, stem_of(filename), std::move(origin), &out.warnings);
        const std::int64_t assembly_ns = ns_since(assembly_start);

        // Document-level costs spread across pages: object-graph decode into
        // backend_parse, final assembly into assembly (remainder to page 1).
        if (!pages.empty()) {
          const auto n = static_cast<std::int64_t>(pages.size());
          const std::int64_t decode_share = parsed.decode_ns / n;
          const std::int64_t assembly_share = assembly_ns / n;
          for (PageResult& page : pages) {
            page.timing.stage_ns[stage_index(Stage::BackendParse)] += decode_share;
            page.timing.stage_ns[stage_index(Stage::Assembly)] += assembly_share;
          }
          pages[0].timing.stage_ns[stage_index(Stage::BackendParse)] +=
              parsed.decode_ns - decode_share * n;
          pages[0].timing.stage_ns[stage_index(Stage::Assembly)] +=
              assembly_ns - assembly_share * n;
        }

        bool any_failed = false;
        for (PageResult& page : pages) {
          any_failed = any_failed || page.failed;
          for (std::string& w : page.warnings) out.warnings.push_back(std::move(w));
          out.page_timings.push_back(page.timing);
        }

        out.document = std::move(doc);
        out.status =
            any_failed ? ConversionStatus::PartialSuccess : ConversionStatus::Success;
        break;
      }
      case InputFormat::Html:
      case InputFormat::Markdown: {
        MarkupSource source = make_markup_source(format, bytes, filename);
        out.document = format == InputFormat::Html ? parse_html(source, &out.warnings)
                                                   : parse_markdown(source, &out.warnings);
        out.status = ConversionStatus::Success;
        break;
      }
      case InputFormat::Unknown:
        out.status = ConversionStatus::Failure;
        out.errors.push_back("unsupported format: " + std::string(filename));
        break;
    }
  } catch (const Error& e) {
    out.status = ConversionStatus::Failure;
    out.errors.push_back(e.what());
  } catch (const std::exception& e) {
    out.status = ConversionStatus::Failure;
    out.errors.push_back(std::string("conversion failed: ") + e.what());
  }

  out.total_ns = ns_since(start);
  return out;
}

}  // namespace docforge
