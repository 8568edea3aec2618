#include "ctps/layout.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ctps/errors.hpp"

namespace ctps {
namespace {

void check_layout_args(int rows, int cols, int width, int height) {
  if (rows < 2 || cols < 2) {
    throw InvalidDimensions("layouts need at least 2 rows and 2 columns, got " + std::to_string(rows) +
                            "x" + std::to_string(cols));
  }
  if (width < 2 || height < 2) {
    throw InvalidDimensions("layout frame must be at least 2x2");
  }
}

std::vector<double> uniform_nodes(int n, int dim) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = j * static_cast<double>(dim - 1) / (n - 1);
  return out;
}

// Mirrored so the node set is exactly symmetric and the midpoint is exact.
std::vector<double> lobatto_nodes(int n, int dim) {
  std::vector<double> unit(static_cast<std::size_t>(n));
  for (int j = 0; 2 * j <= n - 1; ++j) {
    const double u = 2 * j == n - 1 ? 0.5 : (1.0 - std::cos(std::numbers::pi * j / (n - 1))) / 2.0;
    unit[static_cast<std::size_t>(j)] = u;
    unit[static_cast<std::size_t>(n - 1 - j)] = 1.0 - u;
  }
  std::vector<double> out(unit.size());
  for (std::size_t j = 0; j < unit.size(); ++j) out[j] = unit[j] * (dim - 1);
  return out;
}

ControlLayout assemble(LayoutKind kind, int rows, int cols, int width, int height,
                       const std::vector<double>& xs, const std::vector<double>& ys) {
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(rows) * cols);
  for (double y : ys)
    for (double x : xs) pts.push_back({x, y});
  return {kind, rows, cols, ControlPointSet(std::move(pts), width, height)};
}

}  // namespace

ControlLayout uniform_layout(int rows, int cols, int width, int height) {
  check_layout_args(rows, cols, width, height);
  return assemble(LayoutKind::uniform, rows, cols, width, height, uniform_nodes(cols, width),
                  uniform_nodes(rows, height));
}

ControlLayout boundary_dense_layout(int rows, int cols, int width, int height) {
  check_layout_args(rows, cols, width, height);
  return assemble(LayoutKind::boundary_dense, rows, cols, width, height, lobatto_nodes(cols, width),
                  lobatto_nodes(rows, height));
}

}  // namespace ctps
