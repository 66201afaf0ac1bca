#include <algorithm>
#include <cctype>
#include <cmath>

#include "docforge/layout.hpp"

namespace docforge {

namespace {

struct Line {
  std::vector<int> cell_ids;  // indices into page.cells
  BoundingBox bbox;
  double baseline = 0.0;   // bbox bottom of the first member
  double x_start = 0.0;
  double font_size = 0.0;  // median of members
  std::string text;        // members joined left-to-right
  bool bullet_start = false;
};

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

bool starts_with_bullet(std::string_view text) {
  if (text.empty()) return false;
  // Bullet glyphs: '-', '*', or U+2022 (UTF-8 e2 80 a2).
  if (text.size() >= 2 && (text[0] == '-' || text[0] == '*') && text[1] == ' ') return true;
  if (text.size() >= 4 && static_cast<unsigned char>(text[0]) == 0xE2 &&
      static_cast<unsigned char>(text[1]) == 0x80 &&
      static_cast<unsigned char>(text[2]) == 0xA2)
    return true;
  std::size_t digits = 0;
  while (digits < text.size() && std::isdigit(static_cast<unsigned char>(text[digits])))
    ++digits;
  if (digits >= 1 && digits < text.size() && (text[digits] == '.' || text[digits] == ')')) {
    return digits + 1 == text.size() || text[digits + 1] == ' ';
  }
  return false;
}

bool matches_caption(std::string_view text) {
  auto ieq = [](char a, char b) { return std::tolower(a) == std::tolower(b); };
  for (std::string_view prefix : {"figure", "table", "fig."}) {
    if (text.size() <= prefix.size()) continue;
    bool ok = true;
    for (std::size_t i = 0; i < prefix.size(); ++i)
      if (!ieq(text[i], prefix[i])) { ok = false; break; }
    if (!ok) continue;
    std::size_t p = prefix.size();
    if (text[p] != ' ') continue;
    while (p < text.size() && text[p] == ' ') ++p;
    if (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) return true;
  }
  return false;
}

bool monospace_font(const std::string& name) {
  std::string lowered(name);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return lowered.find("courier") != std::string::npos ||
         lowered.find("mono") != std::string::npos;
}

std::vector<Line> build_lines(const ParsedPage& page) {
  std::vector<int> order(page.cells.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& ca = page.cells[a].bbox;
    const auto& cb = page.cells[b].bbox;
    if (ca.b != cb.b) return ca.b < cb.b;
    return ca.l < cb.l;
  });

  std::vector<Line> lines;
  for (int id : order) {
    const TextCell& cell = page.cells[id];
    const double tolerance = 0.4 * std::max(1.0, cell.font_size);
    if (!lines.empty() && std::abs(cell.bbox.b - lines.back().baseline) <= tolerance) {
      Line& line = lines.back();
      line.cell_ids.push_back(id);
      line.bbox = union_box(line.bbox, cell.bbox);
    } else {
      Line line;
      line.cell_ids.push_back(id);
      line.bbox = cell.bbox;
      line.baseline = cell.bbox.b;
      lines.push_back(std::move(line));
    }
  }

  for (Line& line : lines) {
    std::sort(line.cell_ids.begin(), line.cell_ids.end(), [&](int a, int b) {
      return page.cells[a].bbox.l < page.cells[b].bbox.l;
    });
    line.x_start = page.cells[line.cell_ids.front()].bbox.l;
    std::vector<double> sizes;
    for (int id : line.cell_ids) {
      sizes.push_back(page.cells[id].font_size);
      if (!line.text.empty()) line.text += ' ';
      line.text += page.cells[id].text;
    }
    line.font_size = median(std::move(sizes));
    line.bullet_start = starts_with_bullet(page.cells[line.cell_ids.front()].text);
  }
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    if (a.bbox.t != b.bbox.t) return a.bbox.t < b.bbox.t;
    return a.bbox.l < b.bbox.l;
  });
  return lines;
}

struct Block {
  std::vector<int> line_ids;
  BoundingBox bbox;
};

std::vector<Block> build_blocks(const std::vector<Line>& lines, double page_median_font) {
  // Leading estimated from consecutive baseline gaps that are plausible
  // single-line spacings; anything beyond 3x the page font is a block break,
  // not leading, and would skew the median.
  std::vector<double> leadings;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const double leading = lines[i].baseline - lines[i - 1].baseline;
    if (leading > 0.5 && leading <= 3.0 * page_median_font) leadings.push_back(leading);
  }
  const double median_leading =
      leadings.empty() ? 1.4 * page_median_font : median(std::move(leadings));

  std::vector<Block> blocks;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    bool merged = false;
    if (!blocks.empty() && !lines[i].bullet_start) {
      const Line& prev = lines[blocks.back().line_ids.back()];
      const double gap = lines[i].baseline - prev.baseline;
      const double overlap =
          interval_overlap(prev.bbox.l, prev.bbox.r, lines[i].bbox.l, lines[i].bbox.r);
      const double min_width = std::min(prev.bbox.width(), lines[i].bbox.width());
      if (gap > 0 && gap < 1.4 * median_leading && min_width > 0 &&
          overlap >= 0.5 * min_width) {
        blocks.back().line_ids.push_back(static_cast<int>(i));
        blocks.back().bbox = union_box(blocks.back().bbox, lines[i].bbox);
        merged = true;
      }
    }
    if (!merged) {
      Block block;
      block.line_ids.push_back(static_cast<int>(i));
      block.bbox = lines[i].bbox;
      blocks.push_back(std::move(block));
    }
  }
  return blocks;
}

ItemLabel classify_block(const Block& block, const std::vector<Line>& lines,
                         const ParsedPage& page, double page_median_font,
                         double page_max_font) {
  const Line& first = lines[block.line_ids.front()];
  const std::size_t n_lines = block.line_ids.size();

  std::vector<double> sizes;
  int monospace_cells = 0, total_cells = 0;
  double block_max_font = 0.0;
  for (int li : block.line_ids) {
    for (int ci : lines[li].cell_ids) {
      const TextCell& cell = page.cells[ci];
      sizes.push_back(cell.font_size);
      block_max_font = std::max(block_max_font, cell.font_size);
      if (monospace_font(cell.font_name)) ++monospace_cells;
      ++total_cells;
    }
  }
  const double block_font = median(std::move(sizes));

  // Page furniture: one-line blocks fully inside the 5% bands.
  if (n_lines <= 1 && block.bbox.b <= 0.05 * page.height) return ItemLabel::PageHeader;
  if (n_lines <= 1 && block.bbox.t >= 0.95 * page.height) return ItemLabel::PageFooter;

  if (matches_caption(first.text)) return ItemLabel::Caption;
  if (first.bullet_start) return ItemLabel::ListItem;

  // Table: >= 2 lines sharing >= 2 aligned x-start positions (+-2pt) across
  // >= 60% of the block's lines.
  if (n_lines >= 2) {
    std::vector<std::pair<double, int>> positions;  // x -> line count
    for (int li : block.line_ids) {
      std::vector<double> line_starts;
      for (int ci : lines[li].cell_ids) line_starts.push_back(page.cells[ci].bbox.l);
      std::sort(line_starts.begin(), line_starts.end());
      line_starts.erase(std::unique(line_starts.begin(), line_starts.end()),
                        line_starts.end());
      for (double x : line_starts) {
        bool found = false;
        for (auto& [px, count] : positions) {
          if (std::abs(px - x) <= 2.0) {
            ++count;
            found = true;
            break;
          }
        }
        if (!found) positions.emplace_back(x, 1);
      }
    }
    int shared = 0;
    for (auto& [x, count] : positions)
      if (count >= 0.6 * static_cast<double>(n_lines)) ++shared;
    if (shared >= 2) return ItemLabel::Table;
  }

  if (total_cells > 0 && monospace_cells >= 0.8 * total_cells) return ItemLabel::Code;

  // Formula: short single line with an equals sign and symbol density;
  // deliberately weak, mislabels degrade to Text.
  if (n_lines == 1 && first.text.size() < 48 &&
      first.text.find('=') != std::string::npos) {
    int symbols = 0;
    for (char c : first.text)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != ' ') ++symbols;
    if (symbols >= 2) return ItemLabel::Formula;
  }

  const bool oversized = block_font >= 1.15 * page_median_font;
  if (page.page_no == 1 && oversized && block_max_font >= page_max_font - 0.1 &&
      block.bbox.t < page.height / 3.0)
    return ItemLabel::Title;
  if (oversized && n_lines <= 2) return ItemLabel::SectionHeader;

  return ItemLabel::Text;
}

}  // namespace

LayoutPrediction predict_layout_heuristic(const ParsedPage& page) {
  LayoutPrediction prediction;
  prediction.page_no = page.page_no;
  prediction.source = PredictionSource::Heuristic;

  std::vector<double> all_sizes;
  double page_max_font = 0.0;
  for (const TextCell& cell : page.cells) {
    all_sizes.push_back(cell.font_size);
    page_max_font = std::max(page_max_font, cell.font_size);
  }
  const double page_median_font = std::max(1.0, median(std::move(all_sizes)));

  const std::vector<Line> lines = build_lines(page);
  const std::vector<Block> blocks = build_blocks(lines, page_median_font);

  int next_id = 0;
  for (const Block& block : blocks) {
    LayoutCluster cluster;
    cluster.id = next_id++;
    cluster.label = classify_block(block, lines, page, page_median_font, page_max_font);
    cluster.bbox = block.bbox;
    cluster.confidence = 0.5;
    for (int li : block.line_ids)
      for (int ci : lines[li].cell_ids)
        cluster.cells.push_back(page.cells[ci].stream_index);
    std::sort(cluster.cells.begin(), cluster.cells.end());
    prediction.clusters.push_back(std::move(cluster));
  }

  for (const BoundingBox& region : page.bitmap_regions) {
    LayoutCluster cluster;
    cluster.id = next_id++;
    cluster.label = ItemLabel::Picture;
    cluster.bbox = region;
    cluster.confidence = 0.5;
    prediction.clusters.push_back(std::move(cluster));
  }
  return prediction;
}

}  // namespace docforge
