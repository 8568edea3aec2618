#include "ctps/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ctps/errors.hpp"

namespace ctps {

Image::Image(int width, int height, int channels)
    : Image(width, height, channels,
            std::vector<double>(static_cast<std::size_t>(std::max(width, 0)) * std::max(height, 0) *
                                    std::max(channels, 0),
                                0.0)) {}

Image::Image(int width, int height, int channels, std::vector<double> samples)
    : width_(width), height_(height), channels_(channels), samples_(std::move(samples)) {
  if (width < 1 || height < 1) {
    throw InvalidDimensions("image must be non-empty, got " + std::to_string(width) + "x" +
                            std::to_string(height));
  }
  if (channels != 1 && channels != 3) {
    throw InvalidArgument("images have 1 or 3 channels, got " + std::to_string(channels));
  }
  if (samples_.size() != static_cast<std::size_t>(width) * height * channels) {
    throw DimensionMismatch("image raster holds " + std::to_string(samples_.size()) +
                            " samples, expected " + std::to_string(width * height * channels));
  }
  for (double s : samples_) {
    if (!(s >= 0.0 && s <= 1.0)) throw InvalidArgument("image samples must lie in [0, 1]");
  }
}

Image crop_center(const Image& img, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw InvalidArgument("crop fraction must be in (0, 1]");
  const int w = std::max(1, static_cast<int>(std::lround(img.width() * fraction)));
  const int h = std::max(1, static_cast<int>(std::lround(img.height() * fraction)));
  const int x0 = (img.width() - w) / 2;
  const int y0 = (img.height() - h) / 2;
  Image out(w, h, img.channels());
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < img.channels(); ++c) out.at(x, y, c) = img.at(x0 + x, y0 + y, c);
  return out;
}

}  // namespace ctps
