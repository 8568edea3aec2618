#include "ctps/warp.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "ctps/errors.hpp"
#include "ctps/parallel.hpp"

namespace ctps {
namespace {
constexpr double kBorderSnap = 1e-9;
std::atomic<std::uint64_t> g_warp_calls{0};
}  // namespace

std::uint64_t backward_warp_calls() { return g_warp_calls.load(); }

PixelValue bilinear_sample(const Image& img, Point2 at) {
  PixelValue out{0.0, 0.0, 0.0};
  const double max_x = img.width() - 1;
  const double max_y = img.height() - 1;
  // Rounding noise from the TPS evaluation must not push a border sample into
  // the zero-filled exterior.
  if (!(at.x >= -kBorderSnap && at.x <= max_x + kBorderSnap && at.y >= -kBorderSnap &&
        at.y <= max_y + kBorderSnap)) {
    return out;
  }
  at.x = std::clamp(at.x, 0.0, max_x);
  at.y = std::clamp(at.y, 0.0, max_y);

  const int x0 = static_cast<int>(std::floor(at.x));
  const int y0 = static_cast<int>(std::floor(at.y));
  const int x1 = std::min(x0 + 1, img.width() - 1);
  const int y1 = std::min(y0 + 1, img.height() - 1);
  const double fx = at.x - x0;
  const double fy = at.y - y0;
  for (int c = 0; c < img.channels(); ++c) {
    const double a = img.at(x0, y0, c);
    const double b = img.at(x1, y0, c);
    const double cc = img.at(x0, y1, c);
    const double d = img.at(x1, y1, c);
    const double top = a + (b - a) * fx;
    const double bot = cc + (d - cc) * fx;
    out[static_cast<std::size_t>(c)] = std::clamp(top + (bot - top) * fy, 0.0, 1.0);
  }
  return out;
}

Image backward_warp(const Image& img, const FlowField& f) {
  if (img.width() != f.width() || img.height() != f.height()) {
    throw DimensionMismatch("image and flow sizes differ");
  }
  g_warp_calls.fetch_add(1);
  Image out(img.width(), img.height(), img.channels());
  parallel_rows(img.height(), [&](int y) {
    for (int x = 0; x < img.width(); ++x) {
      const Displacement d = f.at(x, y);
      const PixelValue v = bilinear_sample(img, {x + d.u, y + d.v});
      for (int c = 0; c < img.channels(); ++c) out.at(x, y, c) = v[static_cast<std::size_t>(c)];
    }
  });
  return out;
}

Image iterative_warp_step(const Image& img, const TpsTransform& inverse_map) {
  return backward_warp(img, tps_to_flow(inverse_map, make_grid(img.width(), img.height())));
}

}  // namespace ctps
