#include "dense_solver.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "ctps/errors.hpp"

namespace ctps::detail {

void solve_partial_pivot(DenseMatrix a, std::vector<double>& rhs, double pivot_tolerance) {
  const std::size_t n = a.size();
  // rhs is n x 2, row-major.
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot_row = k;
    double pivot_mag = std::abs(a(k, k));
    for (std::size_t r = k + 1; r < n; ++r) {
      const double mag = std::abs(a(r, k));
      if (mag > pivot_mag) {
        pivot_mag = mag;
        pivot_row = r;
      }
    }
    if (!(pivot_mag >= pivot_tolerance)) {
      throw DegenerateConfiguration("singular TPS system: pivot " + std::to_string(pivot_mag) +
                                    " in column " + std::to_string(k) +
                                    " (collinear or coincident control points?)");
    }
    if (pivot_row != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(pivot_row, c));
      std::swap(rhs[2 * k], rhs[2 * pivot_row]);
      std::swap(rhs[2 * k + 1], rhs[2 * pivot_row + 1]);
    }
    const double inv = 1.0 / a(k, k);
    for (std::size_t r = k + 1; r < n; ++r) {
      const double factor = a(r, k) * inv;
      if (factor == 0.0) continue;
      a(r, k) = 0.0;
      for (std::size_t c = k + 1; c < n; ++c) a(r, c) -= factor * a(k, c);
      rhs[2 * r] -= factor * rhs[2 * k];
      rhs[2 * r + 1] -= factor * rhs[2 * k + 1];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    double s0 = rhs[2 * k];
    double s1 = rhs[2 * k + 1];
    for (std::size_t c = k + 1; c < n; ++c) {
      s0 -= a(k, c) * rhs[2 * c];
      s1 -= a(k, c) * rhs[2 * c + 1];
    }
    rhs[2 * k] = s0 / a(k, k);
    rhs[2 * k + 1] = s1 / a(k, k);
  }
}

}  // namespace ctps::detail
