#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "docforge/pdf_backend.hpp"
#include "docforge/pdf/fonts.hpp"

namespace docforge::pdf {

/// 2D affine transform in PDF row-vector convention: [x y 1] * [a b / c d / e f].
using Matrix = std::array<double, 6>;

inline constexpr Matrix kIdentity{1, 0, 0, 1, 0, 0};

Matrix mat_mul(const Matrix& first, const Matrix& then);
void mat_apply(const Matrix& m, double x, double y, double& out_x, double& out_y);

/// Everything a page interpreter needs, fully dereferenced so interpretation
/// is a pure function (pages can then run concurrently).
struct PreparedResources {
  struct XObj {
    enum class Kind { Image, Form, Other } kind = Kind::Other;
    std::vector<std::uint8_t> content;  // Form only
    Matrix matrix = kIdentity;          // Form /Matrix
    std::shared_ptr<const PreparedResources> resources;  // Form only
  };

  std::map<std::string, std::shared_ptr<const Font>> fonts;
  std::map<std::string, XObj> xobjects;
};

struct PreparedPage {
  int page_no = 1;
  double width = 0.0;
  double height = 0.0;
  Matrix base = kIdentity;  // PDF user space -> TopLeft device space
  bool rotated = false;     // /Rotate applied
  std::vector<std::uint8_t> content;
  std::shared_ptr<const PreparedResources> resources;
  std::vector<std::string> warnings;  // collected while preparing
};

struct ExtractionResult {
  std::vector<TextCell> cells;
  std::vector<BoundingBox> bitmap_regions;
  std::vector<std::string> warnings;
};

/// Interprets the content stream: text-showing operators Tj TJ ' ", state
/// operators Tm Td TD TL T* Tf Tc Tw Tz cm q/Q, image and form XObjects.
ExtractionResult extract_cells(const PreparedPage& page, double cell_split_gap_em);

}  // namespace docforge::pdf
