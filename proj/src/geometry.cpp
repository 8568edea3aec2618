#include "ctps/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ctps/errors.hpp"

namespace ctps {

ControlPointSet::ControlPointSet(std::vector<Point2> points, int frame_width, int frame_height)
    : points_(std::move(points)), frame_width_(frame_width), frame_height_(frame_height) {
  if (frame_width < 2 || frame_height < 2) {
    throw InvalidDimensions("control point frame must be at least 2x2, got " +
                            std::to_string(frame_width) + "x" + std::to_string(frame_height));
  }
  for (const Point2& p : points_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw InvalidArgument("control point coordinates must be finite");
    }
  }
}

Mat2 rotation_matrix(double degrees) {
  const double rad = degrees * std::numbers::pi / 180.0;
  const double c = std::cos(rad);
  const double s = std::sin(rad);
  return {c, s, -s, c};
}

Point2 rotate_about(Point2 p, Point2 center, double degrees) {
  const Point2 r = rotation_matrix(degrees).apply({p.x - center.x, p.y - center.y});
  return {r.x + center.x, r.y + center.y};
}

Point2 frame_center(int width, int height) {
  return {0.5 * (width - 1), 0.5 * (height - 1)};
}

}  // namespace ctps
