#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "ctps/errors.hpp"
#include "ctps/formats.hpp"

namespace ctps {
namespace {

Image from_bytes(int width, int height, int channels, const unsigned char* data) {
  std::vector<double> samples(static_cast<std::size_t>(width) * height * channels);
  for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = data[i] / 255.0;
  return Image(width, height, channels, std::move(samples));
}

std::vector<unsigned char> to_bytes(const Image& img) {
  std::vector<unsigned char> out(img.samples().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = quantize_sample(img.samples()[i]);
  return out;
}

// --- PNG -------------------------------------------------------------------

struct PngReadBuffer {
  std::string_view bytes;
  std::size_t offset = 0;
};

void png_read_from_buffer(png_structp png, png_bytep out, png_size_t len) {
  auto* buf = static_cast<PngReadBuffer*>(png_get_io_ptr(png));
  if (buf->offset + len > buf->bytes.size()) png_error(png, "unexpected end of PNG data");
  std::memcpy(out, buf->bytes.data() + buf->offset, len);
  buf->offset += len;
}

void png_write_to_string(png_structp png, png_bytep data, png_size_t len) {
  static_cast<std::string*>(png_get_io_ptr(png))->append(reinterpret_cast<const char*>(data), len);
}

void png_flush_noop(png_structp) {}

Image decode_png(std::string_view bytes) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw DecodeError("libpng initialisation failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_read_struct(&png, nullptr, nullptr);
    throw DecodeError("libpng initialisation failed");
  }

  PngReadBuffer buf{bytes, 0};
  std::vector<unsigned char> pixels;
  std::vector<png_bytep> rows;
  int width = 0, height = 0, channels = 0;
  std::string unsupported;

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw DecodeError("corrupt PNG data");
  }
  png_set_read_fn(png, &buf, png_read_from_buffer);
  png_read_info(png, info);

  width = static_cast<int>(png_get_image_width(png, info));
  height = static_cast<int>(png_get_image_height(png, info));
  const int bit_depth = png_get_bit_depth(png, info);
  const int color_type = png_get_color_type(png, info);

  if (bit_depth == 16) {
    unsupported = "16-bit PNG images are not supported";
  } else if (color_type & PNG_COLOR_MASK_ALPHA) {
    unsupported = "PNG images with alpha are not supported";
  } else {
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_strip_alpha(png);
    png_read_update_info(png, info);
    channels = png_get_channels(png, info);
    if (channels != 1 && channels != 3) {
      unsupported = "unsupported PNG channel layout";
    } else {
      pixels.resize(static_cast<std::size_t>(width) * height * channels);
      rows.resize(static_cast<std::size_t>(height));
      for (int y = 0; y < height; ++y) rows[static_cast<std::size_t>(y)] = pixels.data() + static_cast<std::size_t>(y) * width * channels;
      png_read_image(png, rows.data());
      png_read_end(png, nullptr);
    }
  }
  png_destroy_read_struct(&png, &info, nullptr);
  if (!unsupported.empty()) throw UnsupportedFormat(unsupported);
  return from_bytes(width, height, channels, pixels.data());
}

std::string encode_png(const Image& img) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw IoError("libpng initialisation failed");
  png_infop info = png_create_info_struct(png);
  if (!info) {
    png_destroy_write_struct(&png, nullptr);
    throw IoError("libpng initialisation failed");
  }
  std::string out;
  std::vector<unsigned char> pixels = to_bytes(img);
  std::vector<png_bytep> rows(static_cast<std::size_t>(img.height()));
  for (int y = 0; y < img.height(); ++y) {
    rows[static_cast<std::size_t>(y)] = pixels.data() + static_cast<std::size_t>(y) * img.width() * img.channels();
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw IoError("PNG encoding failed");
  }
  png_set_write_fn(png, &out, png_write_to_string, png_flush_noop);
  png_set_IHDR(png, info, static_cast<png_uint_32>(img.width()), static_cast<png_uint_32>(img.height()), 8,
               img.channels() == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return out;
}

// --- Netpbm (binary P5 / P6) -------------------------------------------------

class PnmHeaderReader {
 public:
  explicit PnmHeaderReader(std::string_view bytes) : bytes_(bytes), pos_(2) {}

  long next_int() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      throw DecodeError("malformed PNM header");
    }
    long v = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      v = v * 10 + (bytes_[pos_++] - '0');
      if (v > 1'000'000'000) throw DecodeError("PNM header value out of range");
    }
    return v;
  }

  // Exactly one whitespace byte separates the header from the raster.
  std::size_t raster_offset() const { return pos_ + 1; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view bytes_;
  std::size_t pos_;
};

Image decode_pnm(std::string_view bytes) {
  const int channels = bytes[1] == '5' ? 1 : 3;
  PnmHeaderReader header(bytes);
  const long width = header.next_int();
  const long height = header.next_int();
  const long maxval = header.next_int();
  if (width < 1 || height < 1) throw DecodeError("PNM image has no pixels");
  if (maxval > 255) throw UnsupportedFormat("PNM images deeper than 8 bits are not supported");
  if (maxval != 255) throw UnsupportedFormat("PNM maxval must be 255");
  const std::size_t offset = header.raster_offset();
  const std::size_t needed = static_cast<std::size_t>(width) * height * channels;
  if (offset > bytes.size() || bytes.size() - offset < needed) throw DecodeError("PNM raster is truncated");
  return from_bytes(static_cast<int>(width), static_cast<int>(height), channels,
                    reinterpret_cast<const unsigned char*>(bytes.data() + offset));
}

std::string encode_pnm(const Image& img) {
  std::string out = (img.channels() == 1 ? "P5\n" : "P6\n") + std::to_string(img.width()) + " " +
                    std::to_string(img.height()) + "\n255\n";
  const auto pixels = to_bytes(img);
  out.append(reinterpret_cast<const char*>(pixels.data()), pixels.size());
  return out;
}

std::string lower_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext;
}

}  // namespace

std::uint8_t quantize_sample(double s) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(s, 0.0, 1.0) * 255.0));
}

Image read_image(const std::filesystem::path& path) {
  const std::string bytes = read_file_bytes(path);
  static constexpr unsigned char kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (bytes.size() >= 8 && std::memcmp(bytes.data(), kPngSignature, 8) == 0) return decode_png(bytes);
  if (bytes.size() >= 2 && bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '6')) return decode_pnm(bytes);
  throw UnsupportedFormat(path.string() + ": not an 8-bit PNG, PGM or PPM image");
}

void write_image(const std::filesystem::path& path, const Image& img) {
  const std::string ext = lower_extension(path);
  if (ext == ".png") {
    write_file_bytes(path, encode_png(img));
  } else if (ext == ".pgm" || ext == ".ppm" || ext == ".pnm") {
    if ((ext == ".pgm" && img.channels() != 1) || (ext == ".ppm" && img.channels() != 3)) {
      throw UnsupportedFormat(path.string() + ": extension does not match the channel count");
    }
    write_file_bytes(path, encode_pnm(img));
  } else {
    throw UnsupportedFormat(path.string() + ": unknown image extension (use .png, .pgm or .ppm)");
  }
}

}  // namespace ctps
