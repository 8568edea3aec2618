#pragma once

#include <cstddef>
#include <vector>

namespace ctps::detail {

/// Square row-major matrix, sized at construction.
class DenseMatrix {
 public:
  explicit DenseMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

/// Solves A X = B in place for a two-column right-hand side using Gaussian
/// elimination with partial (row) pivoting. On return `rhs` holds X.
/// Throws DegenerateConfiguration when the largest available pivot in a
/// column is below `pivot_tolerance`.
void solve_partial_pivot(DenseMatrix a, std::vector<double>& rhs, double pivot_tolerance);

}  // namespace ctps::detail
