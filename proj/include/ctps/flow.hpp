#pragma once

#include <cstddef>
#include <vector>

#include "ctps/geometry.hpp"
#include "ctps/tps.hpp"

namespace ctps {

/// A displacement in pixels; u along x, v along y.
struct Displacement {
  double u = 0.0;
  double v = 0.0;

  friend bool operator==(const Displacement&, const Displacement&) = default;
};

/// The integer lattice {0..W-1} x {0..H-1}, enumerated row-major.
class PixelGrid {
 public:
  PixelGrid(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return static_cast<std::size_t>(width_) * height_; }
  Point2 at(std::size_t index) const {
    return {static_cast<double>(index % width_), static_cast<double>(index / width_)};
  }
  std::vector<Point2> coordinates() const;

 private:
  int width_;
  int height_;
};

PixelGrid make_grid(int width, int height);

/// Dense backward displacement field: output pixel x samples the source at
/// x + F(x). Stored in double precision; the on-disk format is float32.
class FlowField {
 public:
  /// All-zero field.
  FlowField(int width, int height);
  FlowField(int width, int height, std::vector<Displacement> vectors);

  int width() const { return width_; }
  int height() const { return height_; }
  Displacement& at(int x, int y) { return vectors_[index(x, y)]; }
  const Displacement& at(int x, int y) const { return vectors_[index(x, y)]; }
  const std::vector<Displacement>& vectors() const { return vectors_; }

  friend bool operator==(const FlowField&, const FlowField&) = default;

 private:
  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width_ + x; }

  int width_;
  int height_;
  std::vector<Displacement> vectors_;
};

/// F(x) = T(x) - x at every lattice point. `inverse_map` is the backward
/// sampling map (output grid -> input positions).
FlowField tps_to_flow(const TpsTransform& inverse_map, const PixelGrid& grid);

/// Bilinear lookup; positions outside the raster are clamped to the border.
Displacement sample_flow(const FlowField& f, Point2 at);

/// Coupling of a new warp onto an accumulated one:
/// F(x) = previous(x + delta(x)) + delta(x).
FlowField compose_flows(const FlowField& previous, const FlowField& delta);

/// Bilinear resampling onto a new raster (pixel-center aligned), with u
/// scaled by new_width/width and v by new_height/height.
FlowField resize_flow(const FlowField& f, int new_width, int new_height);

struct FlowStats {
  double mean_magnitude = 0.0;
  double max_magnitude = 0.0;
};

FlowStats flow_stats(const FlowField& f);

}  // namespace ctps
