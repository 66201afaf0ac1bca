#pragma once

#include <string>
#include <vector>

#include "docforge/layout.hpp"
#include "docforge/pdf_backend.hpp"
#include "docforge/table_structure.hpp"

namespace docforge {

/// Recovers the logical grid from the geometry of the cells assigned to a
/// Table cluster: column bands from 1-D clustering of x-interval left edges,
/// rows from baseline clustering. Cells spanning several column bands get
/// the matching col_span; uncovered grid positions come back as empty Body
/// cells. A cluster with no cells yields a 0x0 structure plus a warning.
TableStructure infer_structure(const LayoutCluster& table_cluster,
                               const std::vector<TextCell>& page_cells,
                               std::vector<std::string>* warnings = nullptr);

/// Assigns every source cell to the grid cell whose band rectangle contains
/// its center (boundary ties go to the lower-index band); texts concatenate
/// in stream order with single spaces, grid-cell boxes become the union of
/// their sources.
TableStructure match_cells(TableStructure structure, const std::vector<TextCell>& page_cells,
                           std::vector<std::string>* warnings = nullptr);

/// Marks row 0 as column headers / column 0 as row headers using span and
/// numeric-content rules.
TableStructure classify_headers(TableStructure structure);

/// infer_structure + match_cells + classify_headers.
TableStructure recover_table(const LayoutCluster& table_cluster,
                             const std::vector<TextCell>& page_cells,
                             std::vector<std::string>* warnings = nullptr);

/// Pipe-table rendering shared by the exporters and the chunker: spanned
/// cells put their text in the first covered position and empty strings
/// elsewhere; the first ColumnHeader row becomes the Markdown header row,
/// additional header rows fold into the body with a warning.
std::string render_markdown_table(const TableStructure& structure,
                                  std::vector<std::string>* warnings = nullptr);

}  // namespace docforge
