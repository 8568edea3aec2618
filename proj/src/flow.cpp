#include "ctps/flow.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ctps/errors.hpp"
#include "ctps/parallel.hpp"

namespace ctps {
namespace {

void check_dims(int width, int height, const char* what) {
  if (width < 2 || height < 2) {
    throw InvalidDimensions(std::string(what) + " must be at least 2x2, got " + std::to_string(width) +
                            "x" + std::to_string(height));
  }
}

}  // namespace

PixelGrid::PixelGrid(int width, int height) : width_(width), height_(height) {
  check_dims(width, height, "pixel grid");
}

std::vector<Point2> PixelGrid::coordinates() const {
  std::vector<Point2> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(at(i));
  return out;
}

PixelGrid make_grid(int width, int height) { return PixelGrid(width, height); }

FlowField::FlowField(int width, int height)
    : width_(width), height_(height) {
  check_dims(width, height, "flow field");
  vectors_.resize(static_cast<std::size_t>(width) * height);
}

FlowField::FlowField(int width, int height, std::vector<Displacement> vectors)
    : width_(width), height_(height), vectors_(std::move(vectors)) {
  check_dims(width, height, "flow field");
  if (vectors_.size() != static_cast<std::size_t>(width) * height) {
    throw DimensionMismatch("flow raster holds " + std::to_string(vectors_.size()) +
                            " vectors, expected " + std::to_string(width * height));
  }
  for (const Displacement& d : vectors_) {
    if (!std::isfinite(d.u) || !std::isfinite(d.v)) throw InvalidArgument("flow vectors must be finite");
  }
}

FlowField tps_to_flow(const TpsTransform& inverse_map, const PixelGrid& grid) {
  FlowField out(grid.width(), grid.height());
  parallel_rows(grid.height(), [&](int y) {
    for (int x = 0; x < grid.width(); ++x) {
      const Point2 p{static_cast<double>(x), static_cast<double>(y)};
      const Point2 q = inverse_map(p);
      out.at(x, y) = {q.x - p.x, q.y - p.y};
    }
  });
  return out;
}

Displacement sample_flow(const FlowField& f, Point2 at) {
  const double x = std::clamp(at.x, 0.0, static_cast<double>(f.width() - 1));
  const double y = std::clamp(at.y, 0.0, static_cast<double>(f.height() - 1));
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const int x1 = std::min(x0 + 1, f.width() - 1);
  const int y1 = std::min(y0 + 1, f.height() - 1);
  const double fx = x - x0;
  const double fy = y - y0;

  const Displacement& a = f.at(x0, y0);
  const Displacement& b = f.at(x1, y0);
  const Displacement& c = f.at(x0, y1);
  const Displacement& d = f.at(x1, y1);
  // Lerp form keeps constant fields exact.
  const double top_u = a.u + (b.u - a.u) * fx;
  const double top_v = a.v + (b.v - a.v) * fx;
  const double bot_u = c.u + (d.u - c.u) * fx;
  const double bot_v = c.v + (d.v - c.v) * fx;
  return {top_u + (bot_u - top_u) * fy, top_v + (bot_v - top_v) * fy};
}

FlowField compose_flows(const FlowField& previous, const FlowField& delta) {
  if (previous.width() != delta.width() || previous.height() != delta.height()) {
    throw DimensionMismatch("cannot compose flows of different sizes");
  }
  FlowField out(delta.width(), delta.height());
  parallel_rows(delta.height(), [&](int y) {
    for (int x = 0; x < delta.width(); ++x) {
      const Displacement d = delta.at(x, y);
      const Displacement p = sample_flow(previous, {x + d.u, y + d.v});
      out.at(x, y) = {p.u + d.u, p.v + d.v};
    }
  });
  return out;
}

FlowField resize_flow(const FlowField& f, int new_width, int new_height) {
  check_dims(new_width, new_height, "resized flow");
  if (new_width == f.width() && new_height == f.height()) return f;

  const double sx = static_cast<double>(new_width) / f.width();
  const double sy = static_cast<double>(new_height) / f.height();
  FlowField out(new_width, new_height);
  parallel_rows(new_height, [&](int y) {
    const double src_y = (y + 0.5) / sy - 0.5;
    for (int x = 0; x < new_width; ++x) {
      const double src_x = (x + 0.5) / sx - 0.5;
      const Displacement d = sample_flow(f, {src_x, src_y});
      out.at(x, y) = {d.u * sx, d.v * sy};
    }
  });
  return out;
}

FlowStats flow_stats(const FlowField& f) {
  FlowStats s;
  double sum = 0.0;
  for (const Displacement& d : f.vectors()) {
    const double m = std::hypot(d.u, d.v);
    sum += m;
    s.max_magnitude = std::max(s.max_magnitude, m);
  }
  s.mean_magnitude = sum / static_cast<double>(f.vectors().size());
  return s;
}

}  // namespace ctps
