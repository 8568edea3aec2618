#pragma once

#include <array>
#include <cstdint>

#include "ctps/flow.hpp"
#include "ctps/geometry.hpp"
#include "ctps/image.hpp"
#include "ctps/tps.hpp"

namespace ctps {

/// Per-channel value; entries past img.channels() are zero.
using PixelValue = std::array<double, 3>;

/// Bilinear interpolation. Positions outside [0, W-1] x [0, H-1] read as 0;
/// positions within 1e-9 px of the border are clamped onto it first.
PixelValue bilinear_sample(const Image& img, Point2 at);

/// output(x) = bilinear_sample(img, x + f(x)).
Image backward_warp(const Image& img, const FlowField& f);

/// One resampling of the current image through a backward TPS map.
Image iterative_warp_step(const Image& img, const TpsTransform& inverse_map);

/// Number of backward_warp() calls made by this process so far.
std::uint64_t backward_warp_calls();

}  // namespace ctps
