#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "docforge/geometry.hpp"

namespace docforge {

enum class CellRole { ColumnHeader, RowHeader, Body };

std::string_view to_string(CellRole role);
std::optional<CellRole> cell_role_from_string(std::string_view s);

/// One logical table cell: a rectangle in (row, col) grid space plus the
/// source text cells that were matched into it.
struct TableCellSpec {
  int start_row = 0;
  int start_col = 0;
  int row_span = 1;
  int col_span = 1;
  CellRole role = CellRole::Body;
  std::string text;
  std::optional<BoundingBox> bbox;
  std::vector<int> source_cells;  // stream indices of matched page cells

  bool operator==(const TableCellSpec&) const = default;
};

/// Logical row/column grid. Cell rectangles are pairwise disjoint; positions
/// not covered by any cell are represented by empty Body cells.
struct TableStructure {
  int num_rows = 0;
  int num_cols = 0;
  std::vector<TableCellSpec> cells;

  bool empty() const { return num_rows == 0 || num_cols == 0; }

  bool operator==(const TableStructure&) const = default;
};

}  // namespace docforge
