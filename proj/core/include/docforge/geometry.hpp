#pragma once

#include <algorithm>
#include <compare>

namespace docforge {

enum class CoordOrigin { TopLeft, BottomLeft };

/// Snaps a coordinate to the millipoint grid. All coordinates held by the
/// document model live on this grid; it is what makes origin conversion an
/// exact involution and keeps JSON output stable.
double quantize_coord(double v);

/// Axis-aligned box in page points.
///
/// TopLeft origin: y grows downward, so t <= b. BottomLeft origin (PDF user
/// space): y grows upward, so t >= b. Use make() to get a normalized box.
struct BoundingBox {
  double l = 0.0;
  double t = 0.0;
  double r = 0.0;
  double b = 0.0;
  CoordOrigin origin = CoordOrigin::TopLeft;

  static BoundingBox make(double l, double t, double r, double b,
                          CoordOrigin origin = CoordOrigin::TopLeft);

  double width() const { return r - l; }
  double height() const { return origin == CoordOrigin::TopLeft ? b - t : t - b; }
  double area() const { return width() * height(); }

  /// y of the upper edge in TopLeft terms; valid only for TopLeft boxes.
  double top() const { return t; }
  double bottom() const { return b; }

  BoundingBox to_top_left(double page_height) const;
  BoundingBox to_bottom_left(double page_height) const;

  bool operator==(const BoundingBox&) const = default;
};

/// Union of two boxes sharing one origin.
BoundingBox union_box(const BoundingBox& a, const BoundingBox& b);

/// Intersection area; 0 when disjoint. Both boxes must share an origin.
double intersection_area(const BoundingBox& a, const BoundingBox& b);

/// Intersection-over-union; 0 when either box is degenerate.
double iou(const BoundingBox& a, const BoundingBox& b);

/// Fraction of `inner`'s area covered by `outer`; 0 for degenerate `inner`.
double containment_fraction(const BoundingBox& inner, const BoundingBox& outer);

/// Overlap length of [a0,a1] and [b0,b1]; 0 when disjoint.
double interval_overlap(double a0, double a1, double b0, double b1);

}  // namespace docforge
