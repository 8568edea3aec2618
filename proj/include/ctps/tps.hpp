#pragma once

#include <span>
#include <vector>

#include "ctps/geometry.hpp"

namespace ctps {

/// O(r) = r^2 * ln(r^2), with O(0) = 0.
double radial_kernel(double r);

/// Isotropic similarity used to condition the TPS system:
/// normalized = scale * (pixel - center).
struct Normalization {
  Point2 center{0.0, 0.0};
  double scale = 1.0;

  Point2 to_normalized(Point2 p) const { return {scale * (p.x - center.x), scale * (p.y - center.y)}; }
  Point2 to_pixels(Point2 q) const { return {q.x / scale + center.x, q.y / scale + center.y}; }

  /// Frame center and 2 / max(width, height).
  static Normalization for_frame(int width, int height);
  static Normalization identity() { return {}; }
};

struct SolveOptions {
  // false solves directly in pixel coordinates (used to check equivariance).
  bool normalize = true;
};

/// A solved thin-plate spline T(p) = C + M p + sum_i w_i O(|p - p_i|).
///
/// Coefficients are held in the normalized frame the system was solved in;
/// the pixel-frame accessors return the equivalent parameters after
/// denormalization.
class TpsTransform {
 public:
  Point2 operator()(Point2 p) const;
  std::vector<Point2> evaluate(std::span<const Point2> query) const;

  // Pixel-frame parameters.
  Point2 affine_offset() const;
  Mat2 affine_matrix() const;
  std::vector<Point2> kernel_weights() const;

  // Normalized-frame parameters, as solved.
  const Normalization& normalization() const { return norm_; }
  Point2 normalized_offset() const { return offset_; }
  const Mat2& normalized_matrix() const { return matrix_; }
  std::span<const Point2> normalized_weights() const { return weights_; }
  std::span<const Point2> normalized_centers() const { return centers_; }

  const ControlPointSet& kernel_centers() const { return sources_; }

  /// True when every source equals its target; evaluation then returns the
  /// query unchanged.
  bool is_identity() const { return identity_; }

 private:
  friend TpsTransform solve_tps(const ControlPointSet&, const ControlPointSet&, SolveOptions);

  TpsTransform(ControlPointSet sources, Normalization norm) : sources_(std::move(sources)), norm_(norm) {}

  ControlPointSet sources_;
  Normalization norm_;
  std::vector<Point2> centers_;
  Point2 offset_;
  Mat2 matrix_;
  std::vector<Point2> weights_;
  bool identity_ = false;
};

/// Exact interpolating TPS with T(sources[i]) = targets[i].
///
/// Solves the full (N+3)x(N+3) bordered system with partial pivoting.
/// Throws CountMismatch, DuplicateControlPoints (sources closer than 1e-9 px)
/// or DegenerateConfiguration (N < 3, or a pivot below 1e-10).
TpsTransform solve_tps(const ControlPointSet& sources, const ControlPointSet& targets,
                       SolveOptions options = {});

inline std::vector<Point2> evaluate_tps(const TpsTransform& t, std::span<const Point2> query) {
  return t.evaluate(query);
}

/// sum_ij (w_i . w_j) O(|p_i - p_j|) in normalized units.
double bending_energy(const TpsTransform& t);

}  // namespace ctps
