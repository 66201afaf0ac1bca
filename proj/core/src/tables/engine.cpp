#include "docforge/table_engine.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>

namespace docforge {

namespace {

double median_of(std::vector<double> v, double fallback) {
  if (v.empty()) return fallback;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::size_t codepoint_count(std::string_view utf8) {
  std::size_t n = 0;
  for (unsigned char c : utf8)
    if ((c & 0xC0) != 0x80) ++n;
  return std::max<std::size_t>(n, 1);
}

std::vector<const TextCell*> cluster_cells(const LayoutCluster& cluster,
                                           const std::vector<TextCell>& page_cells) {
  std::map<int, const TextCell*> by_stream;
  for (const TextCell& cell : page_cells) by_stream[cell.stream_index] = &cell;
  std::vector<const TextCell*> out;
  for (int id : cluster.cells) {
    if (auto it = by_stream.find(id); it != by_stream.end()) out.push_back(it->second);
  }
  std::sort(out.begin(), out.end(), [](const TextCell* a, const TextCell* b) {
    return a->stream_index < b->stream_index;
  });
  return out;
}

struct Bands {
  // Column band i spans [col_edges[i], col_edges[i+1]); edges[0] = -inf and
  // the last edge = +inf. Same shape for rows (top->bottom).
  std::vector<double> col_edges;
  std::vector<double> row_edges;
  int cols() const { return static_cast<int>(col_edges.size()) - 1; }
  int rows() const { return static_cast<int>(row_edges.size()) - 1; }

  /// Band containing x; an exact boundary hit belongs to the lower band.
  static int band_of(const std::vector<double>& edges, double x) {
    int idx = 0;
    for (std::size_t i = 1; i + 1 < edges.size(); ++i) {
      if (edges[i] < x) idx = static_cast<int>(i);
      else break;
    }
    return idx;
  }
};

Bands compute_bands(const std::vector<const TextCell*>& cells) {
  Bands bands;
  if (cells.empty()) return bands;

  constexpr double kInf = 1e18;

  // Columns: 1-D clustering of interval left edges.
  std::vector<double> char_widths;
  for (const TextCell* cell : cells)
    char_widths.push_back(cell->bbox.width() /
                          static_cast<double>(codepoint_count(cell->text)));
  const double gap_threshold = std::max(4.0, 0.5 * median_of(std::move(char_widths), 8.0));

  std::vector<double> lefts;
  for (const TextCell* cell : cells) lefts.push_back(cell->bbox.l);
  std::sort(lefts.begin(), lefts.end());

  std::vector<double> group_starts{lefts.front()};
  double group_end = lefts.front();
  for (double left : lefts) {
    if (left - group_end > gap_threshold) group_starts.push_back(left);
    group_end = left;
  }

  // Rows: baseline clustering, tolerance 0.4 x median font size.
  std::vector<double> fonts;
  for (const TextCell* cell : cells) fonts.push_back(cell->font_size);
  const double tolerance = 0.4 * std::max(1.0, median_of(std::move(fonts), 10.0));

  // A candidate column whose every starting cell tightly follows a same-row
  // predecessor is a continuation of flowing text (e.g. the second word of a
  // cell), not a real column; drop its boundary.
  {
    std::vector<double> merged{group_starts.front()};
    for (std::size_t g = 1; g < group_starts.size(); ++g) {
      const double lo = group_starts[g];
      const double hi = g + 1 < group_starts.size() ? group_starts[g + 1] : kInf;
      bool all_continuations = true;
      bool any = false;
      for (const TextCell* cell : cells) {
        if (cell->bbox.l < lo || cell->bbox.l >= hi) continue;
        any = true;
        double best_prev_r = -kInf;
        for (const TextCell* other : cells) {
          if (other == cell) continue;
          if (std::abs(other->bbox.b - cell->bbox.b) > tolerance) continue;
          if (other->bbox.l < cell->bbox.l) best_prev_r = std::max(best_prev_r, other->bbox.r);
        }
        if (cell->bbox.l - best_prev_r > gap_threshold) {
          all_continuations = false;
          break;
        }
      }
      if (!any || !all_continuations) merged.push_back(lo);
    }
    group_starts = std::move(merged);
  }

  bands.col_edges.push_back(-kInf);
  for (std::size_t i = 1; i < group_starts.size(); ++i)
    bands.col_edges.push_back(group_starts[i]);
  bands.col_edges.push_back(kInf);

  std::vector<double> baselines;
  for (const TextCell* cell : cells) baselines.push_back(cell->bbox.b);
  std::sort(baselines.begin(), baselines.end());

  std::vector<std::pair<double, int>> groups;  // (sum, count)
  double anchor = baselines.front();
  groups.emplace_back(0.0, 0);
  for (double b : baselines) {
    if (b - anchor > tolerance) {
      groups.emplace_back(0.0, 0);
      anchor = b;
    }
    groups.back().first += b;
    groups.back().second += 1;
  }

  bands.row_edges.push_back(-kInf);
  for (std::size_t i = 1; i < groups.size(); ++i) {
    const double prev_mean = groups[i - 1].first / groups[i - 1].second;
    const double next_mean = groups[i].first / groups[i].second;
    bands.row_edges.push_back(0.5 * (prev_mean + next_mean));
  }
  bands.row_edges.push_back(kInf);
  return bands;
}

int col_span_of(const Bands& bands, const BoundingBox& box) {
  int span = 0;
  for (int c = 0; c < bands.cols(); ++c) {
    const double lo = bands.col_edges[c];
    const double hi = bands.col_edges[c + 1];
    if (interval_overlap(box.l, box.r, lo, hi) > 1.0) ++span;
  }
  return std::max(span, 1);
}

}  // namespace

TableStructure infer_structure(const LayoutCluster& table_cluster,
                               const std::vector<TextCell>& page_cells,
                               std::vector<std::string>* warnings) {
  TableStructure structure;
  const auto cells = cluster_cells(table_cluster, page_cells);
  if (cells.empty()) {
    if (warnings)
      warnings->push_back("table cluster " + std::to_string(table_cluster.id) +
                          " has no cells; emitting 0x0 structure");
    return structure;
  }

  const Bands bands = compute_bands(cells);
  structure.num_rows = bands.rows();
  structure.num_cols = bands.cols();

  // Seed grid cells from source-cell geometry.
  struct Seed {
    int col_span = 1;
  };
  std::map<std::pair<int, int>, Seed> seeds;
  for (const TextCell* cell : cells) {
    const int row = Bands::band_of(bands.row_edges, cell->bbox.b);
    const int col = Bands::band_of(bands.col_edges, cell->bbox.l + 0.001);
    Seed& seed = seeds[{row, col}];
    seed.col_span = std::max(seed.col_span, col_span_of(bands, cell->bbox));
  }

  // Paint occupancy row by row, clipping spans at the next seeded position.
  std::vector<std::vector<bool>> occupied(
      static_cast<std::size_t>(structure.num_rows),
      std::vector<bool>(static_cast<std::size_t>(structure.num_cols), false));

  for (const auto& [pos, seed] : seeds) {
    const auto [row, col] = pos;
    int span = std::min(seed.col_span, structure.num_cols - col);
    for (int c = col + 1; c < col + span; ++c) {
      if (seeds.contains({row, c})) {
        span = c - col;
        break;
      }
    }
    span = std::max(span, 1);
    TableCellSpec spec;
    spec.start_row = row;
    spec.start_col = col;
    spec.col_span = span;
    for (int c = col; c < col + span; ++c) occupied[row][c] = true;
    structure.cells.push_back(std::move(spec));
  }

  for (int r = 0; r < structure.num_rows; ++r) {
    for (int c = 0; c < structure.num_cols; ++c) {
      if (occupied[r][c]) continue;
      TableCellSpec spec;
      spec.start_row = r;
      spec.start_col = c;
      structure.cells.push_back(std::move(spec));
    }
  }

  std::sort(structure.cells.begin(), structure.cells.end(),
            [](const TableCellSpec& a, const TableCellSpec& b) {
              if (a.start_row != b.start_row) return a.start_row < b.start_row;
              return a.start_col < b.start_col;
            });
  return structure;
}

TableStructure match_cells(TableStructure structure, const std::vector<TextCell>& page_cells,
                           std::vector<std::string>* warnings) {
  // Rebuild the band geometry from the same cells, then drop sources into the
  // grid cell covering their center.
  std::vector<const TextCell*> cells;
  for (const TextCell& cell : page_cells) cells.push_back(&cell);
  std::sort(cells.begin(), cells.end(), [](const TextCell* a, const TextCell* b) {
    return a->stream_index < b->stream_index;
  });

  if (structure.empty()) {
    if (!cells.empty() && warnings)
      warnings->push_back("discarding " + std::to_string(cells.size()) +
                          " source cells: table structure is empty");
    return structure;
  }
  const Bands bands = compute_bands(cells);

  // Occupancy: grid position -> index into structure.cells.
  std::map<std::pair<int, int>, std::size_t> owner;
  for (std::size_t i = 0; i < structure.cells.size(); ++i) {
    const TableCellSpec& spec = structure.cells[i];
    for (int r = spec.start_row; r < spec.start_row + spec.row_span; ++r)
      for (int c = spec.start_col; c < spec.start_col + spec.col_span; ++c)
        owner[{r, c}] = i;
  }

  struct Gathered {
    std::vector<const TextCell*> sources;
  };
  std::map<std::size_t, Gathered> gathered;

  for (const TextCell* cell : cells) {
    const double cx = 0.5 * (cell->bbox.l + cell->bbox.r);
    const double cy = 0.5 * (cell->bbox.t + cell->bbox.b);
    int row = Bands::band_of(bands.row_edges, cy);
    int col = Bands::band_of(bands.col_edges, cx);
    row = std::min(row, structure.num_rows - 1);
    col = std::min(col, structure.num_cols - 1);

    auto it = owner.find({row, col});
    if (it == owner.end()) {
      // Nearest grid cell by center distance (positions sparse only when the
      // structure was built from different cells).
      if (warnings)
        warnings->push_back("source cell " + std::to_string(cell->stream_index) +
                            " outside the grid; appending to nearest cell");
      double best = 1e30;
      for (const auto& [pos, idx] : owner) {
        const double dr = pos.first - row, dc = pos.second - col;
        const double d = dr * dr + dc * dc;
        if (d < best) {
          best = d;
          it = owner.find(pos);
        }
      }
      if (it == owner.end()) continue;
    }
    gathered[it->second].sources.push_back(cell);
  }

  for (auto& [index, bundle] : gathered) {
    TableCellSpec& spec = structure.cells[index];
    std::sort(bundle.sources.begin(), bundle.sources.end(),
              [](const TextCell* a, const TextCell* b) {
                return a->stream_index < b->stream_index;
              });
    std::string text;
    std::optional<BoundingBox> box;
    for (const TextCell* cell : bundle.sources) {
      if (!text.empty()) text += ' ';
      text += cell->text;
      spec.source_cells.push_back(cell->stream_index);
      box = box ? union_box(*box, cell->bbox) : cell->bbox;
    }
    spec.text = std::move(text);
    spec.bbox = box;
  }
  return structure;
}

namespace {

// Literal transcription of the numeric-content pattern: digits, whitespace,
// '.', ',', '%', '$', '-', U+2212, U+20AC.
bool is_numeric_text(std::string_view utf8) {
  if (utf8.empty()) return false;
  std::size_t i = 0;
  while (i < utf8.size()) {
    const unsigned char c = static_cast<unsigned char>(utf8[i]);
    if (std::isdigit(c) || c == ' ' || c == '\t' || c == '.' || c == ',' || c == '%' ||
        c == '$' || c == '-') {
      ++i;
      continue;
    }
    // U+2212 = e2 88 92, U+20AC = e2 82 ac
    if (c == 0xE2 && i + 2 < utf8.size()) {
      const unsigned char b1 = static_cast<unsigned char>(utf8[i + 1]);
      const unsigned char b2 = static_cast<unsigned char>(utf8[i + 2]);
      if ((b1 == 0x88 && b2 == 0x92) || (b1 == 0x82 && b2 == 0xAC)) {
        i += 3;
        continue;
      }
    }
    return false;
  }
  return true;
}

}  // namespace

TableStructure classify_headers(TableStructure structure) {
  if (structure.empty()) return structure;

  int row0_nonempty = 0, row0_nonnumeric = 0;
  bool row0_has_span = false;
  int body_nonempty = 0, body_numeric = 0;
  for (const TableCellSpec& cell : structure.cells) {
    const bool empty = cell.text.empty();
    if (cell.start_row == 0) {
      if (cell.col_span > 1) row0_has_span = true;
      if (!empty) {
        ++row0_nonempty;
        if (!is_numeric_text(cell.text)) ++row0_nonnumeric;
      }
    } else if (!empty) {
      ++body_nonempty;
      if (is_numeric_text(cell.text)) ++body_numeric;
    }
  }

  const bool column_headers =
      row0_has_span ||
      (row0_nonempty > 0 && row0_nonnumeric == row0_nonempty && body_nonempty > 0 &&
       body_numeric * 2 >= body_nonempty);

  if (column_headers) {
    for (TableCellSpec& cell : structure.cells)
      if (cell.start_row == 0) cell.role = CellRole::ColumnHeader;
  }

  // Row headers: column-0 body cells mostly non-numeric while the rest of the
  // body is mostly numeric.
  int col0_nonempty = 0, col0_nonnumeric = 0;
  int rest_nonempty = 0, rest_numeric = 0;
  for (const TableCellSpec& cell : structure.cells) {
    if (cell.role == CellRole::ColumnHeader) continue;
    if (cell.text.empty()) continue;
    if (cell.start_col == 0) {
      ++col0_nonempty;
      if (!is_numeric_text(cell.text)) ++col0_nonnumeric;
    } else {
      ++rest_nonempty;
      if (is_numeric_text(cell.text)) ++rest_numeric;
    }
  }
  const bool row_headers = col0_nonempty > 0 && rest_nonempty > 0 &&
                           col0_nonnumeric * 5 >= col0_nonempty * 4 &&
                           rest_numeric * 2 >= rest_nonempty;
  if (row_headers) {
    for (TableCellSpec& cell : structure.cells)
      if (cell.start_col == 0 && cell.role != CellRole::ColumnHeader)
        cell.role = CellRole::RowHeader;
  }
  return structure;
}

TableStructure recover_table(const LayoutCluster& table_cluster,
                             const std::vector<TextCell>& page_cells,
                             std::vector<std::string>* warnings) {
  TableStructure structure = infer_structure(table_cluster, page_cells, warnings);
  const auto cells = cluster_cells(table_cluster, page_cells);
  std::vector<TextCell> own;
  own.reserve(cells.size());
  for (const TextCell* cell : cells) own.push_back(*cell);
  structure = match_cells(std::move(structure), own, warnings);
  return classify_headers(std::move(structure));
}

std::string render_markdown_table(const TableStructure& structure,
                                  std::vector<std::string>* warnings) {
  if (structure.empty()) return "";

  // Expand to a dense grid of strings; spans repeat text only at the first
  // covered position.
  std::vector<std::vector<std::string>> grid(
      static_cast<std::size_t>(structure.num_rows),
      std::vector<std::string>(static_cast<std::size_t>(structure.num_cols)));
  std::set<int> header_rows;
  for (const TableCellSpec& cell : structure.cells) {
    if (cell.start_row >= structure.num_rows || cell.start_col >= structure.num_cols)
      continue;
    std::string text = cell.text;
    for (char& c : text)
      if (c == '\n' || c == '\r') c = ' ';
    std::string escaped;
    for (char c : text) {
      if (c == '|') escaped += "\\|";
      else escaped.push_back(c);
    }
    grid[cell.start_row][cell.start_col] = escaped;
    if (cell.role == CellRole::ColumnHeader) header_rows.insert(cell.start_row);
  }

  int header_row = -1;
  if (!header_rows.empty()) {
    header_row = *header_rows.begin();
    if (header_rows.size() > 1 && warnings)
      warnings->push_back("multiple column-header rows; folding extra rows into the body");
  }

  auto render_row = [&](int r) {
    std::string line = "|";
    for (int c = 0; c < structure.num_cols; ++c) {
      line += ' ';
      line += grid[r][c];
      line += " |";
    }
    return line;
  };

  std::string out;
  std::string separator = "|";
  for (int c = 0; c < structure.num_cols; ++c) separator += " --- |";

  if (header_row >= 0) {
    out += render_row(header_row);
    out += '\n';
    out += separator;
    out += '\n';
    for (int r = 0; r < structure.num_rows; ++r) {
      if (r == header_row) continue;
      out += render_row(r);
      out += '\n';
    }
  } else {
    // Markdown requires a header row; emit an empty one.
    std::string empty = "|";
    for (int c = 0; c < structure.num_cols; ++c) empty += "  |";
    out += empty;
    out += '\n';
    out += separator;
    out += '\n';
    for (int r = 0; r < structure.num_rows; ++r) {
      out += render_row(r);
      out += '\n';
    }
  }
  if (!out.empty()) out.pop_back();
  return out;
}

}  // namespace docforge
