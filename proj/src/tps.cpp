#include "ctps/tps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ctps/errors.hpp"
#include "dense_solver.hpp"

namespace ctps {
namespace {

constexpr double kPivotTolerance = 1e-10;
constexpr double kDuplicateDistance = 1e-9;

// O evaluated from a squared distance, avoiding the sqrt.
double kernel_from_sq(double r2) { return r2 > 0.0 ? r2 * std::log(r2) : 0.0; }

void check_inputs(const ControlPointSet& sources, const ControlPointSet& targets) {
  if (sources.size() != targets.size()) {
    throw CountMismatch("source and target counts differ: " + std::to_string(sources.size()) +
                        " vs " + std::to_string(targets.size()));
  }
  if (sources.size() < 3) {
    throw DegenerateConfiguration("a TPS needs at least 3 control points, got " +
                                  std::to_string(sources.size()));
  }
  const auto pts = sources.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y) < kDuplicateDistance) {
        throw DuplicateControlPoints("source control points " + std::to_string(i) + " and " +
                                     std::to_string(j) + " coincide");
      }
    }
  }
}

}  // namespace

double radial_kernel(double r) {
  if (r == 0.0) return 0.0;
  const double r2 = r * r;
  return r2 * std::log(r2);
}

Normalization Normalization::for_frame(int width, int height) {
  return {frame_center(width, height), 2.0 / std::max(width, height)};
}

TpsTransform solve_tps(const ControlPointSet& sources, const ControlPointSet& targets,
                       SolveOptions options) {
  check_inputs(sources, targets);

  const Normalization norm = options.normalize
                                 ? Normalization::for_frame(sources.frame_width(), sources.frame_height())
                                 : Normalization::identity();
  TpsTransform t(sources, norm);

  const std::size_t n = sources.size();
  t.centers_.reserve(n);
  for (const Point2& p : sources.points()) t.centers_.push_back(norm.to_normalized(p));

  // Unknowns ordered [C^T; M^T; W]; rows are the N data constraints followed
  // by sum(w) = 0 and P^T W = 0.
  detail::DenseMatrix a(n + 3);
  std::vector<double> rhs(2 * (n + 3), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 pi = t.centers_[i];
    a(i, 0) = 1.0;
    a(i, 1) = pi.x;
    a(i, 2) = pi.y;
    for (std::size_t j = 0; j < n; ++j) {
      const Point2 pj = t.centers_[j];
      const double dx = pi.x - pj.x;
      const double dy = pi.y - pj.y;
      a(i, 3 + j) = kernel_from_sq(dx * dx + dy * dy);
    }
    const Point2 q = norm.to_normalized(targets[i]);
    rhs[2 * i] = q.x;
    rhs[2 * i + 1] = q.y;
  }
  for (std::size_t j = 0; j < n; ++j) {
    a(n, 3 + j) = 1.0;
    a(n + 1, 3 + j) = t.centers_[j].x;
    a(n + 2, 3 + j) = t.centers_[j].y;
  }

  detail::solve_partial_pivot(std::move(a), rhs, kPivotTolerance);

  // The interpolant of an identity correspondence is the identity map; keep
  // it exact instead of the solver's rounding.
  if (std::equal(sources.points().begin(), sources.points().end(), targets.points().begin())) {
    t.identity_ = true;
    t.offset_ = {0.0, 0.0};
    t.matrix_ = {};
    t.weights_.assign(n, Point2{});
    return t;
  }

  t.offset_ = {rhs[0], rhs[1]};
  // Rows 1 and 2 hold M^T.
  t.matrix_ = {rhs[2], rhs[4], rhs[3], rhs[5]};
  t.weights_.resize(n);
  for (std::size_t i = 0; i < n; ++i) t.weights_[i] = {rhs[2 * (i + 3)], rhs[2 * (i + 3) + 1]};
  return t;
}

Point2 TpsTransform::operator()(Point2 p) const {
  if (identity_) return p;
  const Point2 q = norm_.to_normalized(p);
  double x = offset_.x + matrix_.m00 * q.x + matrix_.m01 * q.y;
  double y = offset_.y + matrix_.m10 * q.x + matrix_.m11 * q.y;
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    const double dx = q.x - centers_[i].x;
    const double dy = q.y - centers_[i].y;
    const double k = kernel_from_sq(dx * dx + dy * dy);
    x += weights_[i].x * k;
    y += weights_[i].y * k;
  }
  return norm_.to_pixels({x, y});
}

std::vector<Point2> TpsTransform::evaluate(std::span<const Point2> query) const {
  std::vector<Point2> out;
  out.reserve(query.size());
  for (const Point2& p : query) out.push_back((*this)(p));
  return out;
}

// With p^ = s (p - c): O(s r) = s^2 O(r) + s^2 r^2 ln s^2, and the quadratic
// part collapses to a constant because sum(w) = 0 and sum(w p^T) = 0.
Point2 TpsTransform::affine_offset() const {
  const double s = norm_.scale;
  const Point2 c = norm_.center;
  double kx = 0.0, ky = 0.0;
  for (std::size_t i = 0; i < centers_.size(); ++i) {
    const double r2 = centers_[i].x * centers_[i].x + centers_[i].y * centers_[i].y;
    kx += weights_[i].x * r2;
    ky += weights_[i].y * r2;
  }
  const double log_s2 = std::log(s * s);
  const Point2 mc = matrix_.apply(c);
  return {c.x + offset_.x / s - mc.x + log_s2 / s * kx, c.y + offset_.y / s - mc.y + log_s2 / s * ky};
}

Mat2 TpsTransform::affine_matrix() const { return matrix_; }

std::vector<Point2> TpsTransform::kernel_weights() const {
  std::vector<Point2> out;
  out.reserve(weights_.size());
  for (const Point2& w : weights_) out.push_back({norm_.scale * w.x, norm_.scale * w.y});
  return out;
}

double bending_energy(const TpsTransform& t) {
  const auto c = t.normalized_centers();
  const auto w = t.normalized_weights();
  double e = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < c.size(); ++j) {
      const double dx = c[i].x - c[j].x;
      const double dy = c[i].y - c[j].y;
      e += (w[i].x * w[j].x + w[i].y * w[j].y) * kernel_from_sq(dx * dx + dy * dy);
    }
  }
  return e;
}

}  // namespace ctps
