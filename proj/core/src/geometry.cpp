#include "docforge/geometry.hpp"

#include <cmath>

namespace docforge {

double quantize_coord(double v) {
  double q = std::round(v * 1000.0) / 1000.0;
  return q == 0.0 ? 0.0 : q;  // canonicalize -0.0
}

BoundingBox BoundingBox::make(double l, double t, double r, double b, CoordOrigin origin) {
  l = quantize_coord(l);
  t = quantize_coord(t);
  r = quantize_coord(r);
  b = quantize_coord(b);
  if (l > r) std::swap(l, r);
  if (origin == CoordOrigin::TopLeft) {
    if (t > b) std::swap(t, b);
  } else {
    if (t < b) std::swap(t, b);
  }
  return BoundingBox{l, t, r, b, origin};
}

BoundingBox BoundingBox::to_top_left(double page_height) const {
  if (origin == CoordOrigin::TopLeft) return *this;
  const double h = quantize_coord(page_height);
  return BoundingBox::make(l, quantize_coord(h - t), r, quantize_coord(h - b),
                           CoordOrigin::TopLeft);
}

BoundingBox BoundingBox::to_bottom_left(double page_height) const {
  if (origin == CoordOrigin::BottomLeft) return *this;
  const double h = quantize_coord(page_height);
  return BoundingBox::make(l, quantize_coord(h - t), r, quantize_coord(h - b),
                           CoordOrigin::BottomLeft);
}

BoundingBox union_box(const BoundingBox& a, const BoundingBox& b) {
  BoundingBox out = a;
  out.l = std::min(a.l, b.l);
  out.r = std::max(a.r, b.r);
  if (a.origin == CoordOrigin::TopLeft) {
    out.t = std::min(a.t, b.t);
    out.b = std::max(a.b, b.b);
  } else {
    out.t = std::max(a.t, b.t);
    out.b = std::min(a.b, b.b);
  }
  return out;
}

double intersection_area(const BoundingBox& a, const BoundingBox& b) {
  const double w = interval_overlap(a.l, a.r, b.l, b.r);
  double h = 0.0;
  if (a.origin == CoordOrigin::TopLeft) {
    h = interval_overlap(a.t, a.b, b.t, b.b);
  } else {
    h = interval_overlap(a.b, a.t, b.b, b.t);
  }
  return w * h;
}

double iou(const BoundingBox& a, const BoundingBox& b) {
  const double inter = intersection_area(a, b);
  const double uni = a.area() + b.area() - inter;
  return uni <= 0.0 ? 0.0 : inter / uni;
}

double containment_fraction(const BoundingBox& inner, const BoundingBox& outer) {
  const double area = inner.area();
  return area <= 0.0 ? 0.0 : intersection_area(inner, outer) / area;
}

double interval_overlap(double a0, double a1, double b0, double b1) {
  const double lo = std::max(a0, b0);
  const double hi = std::min(a1, b1);
  return hi > lo ? hi - lo : 0.0;
}

}  // namespace docforge
