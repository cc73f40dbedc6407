#ifndef SGTRACK_GEOMETRY_HPP_
#define SGTRACK_GEOMETRY_HPP_

#include <cmath>
#include <stdexcept>

namespace sgtrack {

// Image coordinates: origin at the top-left corner, y grows downward.
struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Axis-aligned box parameterized by its centroid and a fixed size.
struct BBox {
  Point2 center;
  double width = 0.0;
  double height = 0.0;

  double left() const { return center.x - width / 2.0; }
  double right() const { return center.x + width / 2.0; }
  double top() const { return center.y - height / 2.0; }
  double bottom() const { return center.y + height / 2.0; }
  double area() const { return width * height; }

  static BBox from_top_left(double x, double y, double w, double h) {
    return BBox{{x + w / 2.0, y + h / 2.0}, w, h};
  }
};

inline double intersection_area(const BBox& a, const BBox& b) {
  const double w = std::min(a.right(), b.right()) - std::max(a.left(), b.left());
  const double h = std::min(a.bottom(), b.bottom()) - std::max(a.top(), b.top());
  if (w <= 0.0 || h <= 0.0) return 0.0;
  return w * h;
}

// |a ∩ b| / |a|. Asymmetric: normalized by the first box's area.
inline double overlap_ratio(const BBox& a, const BBox& b) {
  return intersection_area(a, b) / a.area();
}

// Symmetric intersection-over-union.
inline double iou(const BBox& a, const BBox& b) {
  const double inter = intersection_area(a, b);
  return inter / (a.area() + b.area() - inter);
}

// Clockwise angle in [0, 2pi) between the +x axis and the vector from
// origin to target, in image coordinates (clockwise on screen because y
// grows downward).
inline double edge_angle(const Point2& origin, const Point2& target) {
  const double dx = target.x - origin.x;
  const double dy = target.y - origin.y;
  if (dx == 0.0 && dy == 0.0)
    throw std::invalid_argument("edge_angle: coincident points");
  double a = std::atan2(dy, dx);
  if (a < 0.0) a += 2.0 * M_PI;
  if (a >= 2.0 * M_PI) a = 0.0;
  return a;
}

// Euclidean distance normalized by the image width.
inline double edge_distance(const Point2& origin, const Point2& target,
                            double image_width) {
  if (image_width <= 0.0)
    throw std::invalid_argument("edge_distance: image width must be positive");
  return std::hypot(target.x - origin.x, target.y - origin.y) / image_width;
}

// Angle/distance pair measured on one directed edge. Coincident vertices
// degenerate to (0, 0) so a frame never aborts on a pathological overlap.
struct EdgeMeasurement {
  double angle = 0.0;
  double distance = 0.0;
};

inline EdgeMeasurement measure_edge(const Point2& origin, const Point2& target,
                                    double image_width) {
  if (origin.x == target.x && origin.y == target.y) return {0.0, 0.0};
  return {edge_angle(origin, target), edge_distance(origin, target, image_width)};
}

}  // namespace sgtrack

#endif  // SGTRACK_GEOMETRY_HPP_
