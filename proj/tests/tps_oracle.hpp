#pragma once

// Independent TPS route for tests: builds the bordered system directly in the
// caller's coordinates and solves it with Eigen's full-pivot LU.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "ctps/geometry.hpp"

namespace ctps::testing {

struct OracleTps {
  std::vector<Point2> centers;
  Eigen::MatrixXd coeffs;  // (N+3) x 2: rows C^T, M^T (2 rows), W

  static double kernel(double r) { return r == 0.0 ? 0.0 : r * r * std::log(r * r); }

  static OracleTps solve(const std::vector<Point2>& p, const std::vector<Point2>& q) {
    const auto n = static_cast<Eigen::Index>(p.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n + 3, n + 3);
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n + 3, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
      a(i, 0) = 1.0;
      a(i, 1) = p[i].x;
      a(i, 2) = p[i].y;
      for (Eigen::Index j = 0; j < n; ++j) a(i, 3 + j) = kernel(std::hypot(p[i].x - p[j].x, p[i].y - p[j].y));
      a(n, 3 + i) = 1.0;
      a(n + 1, 3 + i) = p[i].x;
      a(n + 2, 3 + i) = p[i].y;
      b(i, 0) = q[i].x;
      b(i, 1) = q[i].y;
    }
    return {p, a.fullPivLu().solve(b)};
  }

  Point2 operator()(Point2 x) const {
    double ox = coeffs(0, 0) + coeffs(1, 0) * x.x + coeffs(2, 0) * x.y;
    double oy = coeffs(0, 1) + coeffs(1, 1) * x.x + coeffs(2, 1) * x.y;
    for (std::size_t i = 0; i < centers.size(); ++i) {
      const double k = kernel(std::hypot(x.x - centers[i].x, x.y - centers[i].y));
      ox += coeffs(static_cast<Eigen::Index>(3 + i), 0) * k;
      oy += coeffs(static_cast<Eigen::Index>(3 + i), 1) * k;
    }
    return {ox, oy};
  }

  // Direct double sum of (w_i . w_j) O(|p_i - p_j|).
  double energy() const {
    double e = 0.0;
    for (std::size_t i = 0; i < centers.size(); ++i)
      for (std::size_t j = 0; j < centers.size(); ++j) {
        const auto ri = static_cast<Eigen::Index>(3 + i), rj = static_cast<Eigen::Index>(3 + j);
        e += (coeffs(ri, 0) * coeffs(rj, 0) + coeffs(ri, 1) * coeffs(rj, 1)) *
             kernel(std::hypot(centers[i].x - centers[j].x, centers[i].y - centers[j].y));
      }
    return e;
  }
};

}  // namespace ctps::testing
