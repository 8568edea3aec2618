#pragma once

#include "ctps/geometry.hpp"

namespace ctps {

enum class LayoutKind { uniform, boundary_dense };

/// Fixed target control points on the output frame, row-major.
struct ControlLayout {
  LayoutKind kind;
  int rows;
  int cols;
  ControlPointSet points;
};

/// x = j (W-1)/(cols-1), y = i (H-1)/(rows-1).
ControlLayout uniform_layout(int rows, int cols, int width, int height);

/// Chebyshev-Lobatto nodes per axis, u_j = (1 - cos(pi j/(n-1)))/2, scaled to
/// [0, dim-1]. Denser near all four borders.
ControlLayout boundary_dense_layout(int rows, int cols, int width, int height);

// Presets on a 384x512 working frame.
inline constexpr int kUniformPresetRows = 7;
inline constexpr int kUniformPresetCols = 9;
inline constexpr int kPortraitPresetRows = 8;
inline constexpr int kPortraitPresetCols = 10;

}  // namespace ctps
