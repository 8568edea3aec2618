#pragma once

#include <cstddef>
#include <vector>

namespace ctps {

/// Row-major, channel-interleaved raster with intensities in [0, 1].
/// One (gray) or three (RGB) channels.
class Image {
 public:
  /// All-zero image.
  Image(int width, int height, int channels);
  Image(int width, int height, int channels, std::vector<double> samples);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  double& at(int x, int y, int c) { return samples_[index(x, y, c)]; }
  double at(int x, int y, int c) const { return samples_[index(x, y, c)]; }
  const std::vector<double>& samples() const { return samples_; }

  bool same_shape(const Image& other) const {
    return width_ == other.width_ && height_ == other.height_ && channels_ == other.channels_;
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
  }

  int width_;
  int height_;
  int channels_;
  std::vector<double> samples_;
};

/// Centered sub-image covering `fraction` of each dimension (rounded).
Image crop_center(const Image& img, double fraction);

}  // namespace ctps
