#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ctps {

/// A 2-D position in pixels. Origin top-left, x rightward, y downward.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Row-major 2x2 matrix.
struct Mat2 {
  double m00 = 1.0, m01 = 0.0;
  double m10 = 0.0, m11 = 1.0;

  Point2 apply(Point2 p) const { return {m00 * p.x + m01 * p.y, m10 * p.x + m11 * p.y}; }
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

/// Ordered control points attached to a frame of the given size.
///
/// The frame must be at least 2x2 and every coordinate finite. The point
/// count is not restricted here: a document may legitimately hold fewer
/// than three points, and solve_tps() rejects such sets itself.
class ControlPointSet {
 public:
  ControlPointSet(std::vector<Point2> points, int frame_width, int frame_height);

  std::span<const Point2> points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const Point2& operator[](std::size_t i) const { return points_[i]; }
  int frame_width() const { return frame_width_; }
  int frame_height() const { return frame_height_; }

  /// Same frame, every point passed through `fn`.
  template <typename Fn>
  ControlPointSet transformed(Fn&& fn) const {
    std::vector<Point2> out;
    out.reserve(points_.size());
    for (const Point2& p : points_) out.push_back(fn(p));
    return ControlPointSet(std::move(out), frame_width_, frame_height_);
  }

  friend bool operator==(const ControlPointSet&, const ControlPointSet&) = default;

 private:
  std::vector<Point2> points_;
  int frame_width_;
  int frame_height_;
};

/// Rotation by `degrees` about `center`, counterclockwise as seen on screen
/// (y axis pointing down). Matrix [[cos, sin], [-sin, cos]] in pixel axes.
Mat2 rotation_matrix(double degrees);
Point2 rotate_about(Point2 p, Point2 center, double degrees);

/// Center of a frame in 0-indexed pixel coordinates: ((w-1)/2, (h-1)/2).
Point2 frame_center(int width, int height);

}  // namespace ctps
