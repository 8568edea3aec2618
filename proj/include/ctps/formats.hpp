#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "ctps/flow.hpp"
#include "ctps/geometry.hpp"
#include "ctps/image.hpp"

namespace ctps {

// Control-point documents: {"width":W,"height":H,"points":[[x,y],...]}.
// The canonical form has exactly that key order, no whitespace, numbers in
// shortest round-trip notation, and a trailing newline.
ControlPointSet parse_points(std::string_view text);
std::string format_points(const ControlPointSet& points);
ControlPointSet read_points(const std::filesystem::path& path);
void write_points(const std::filesystem::path& path, const ControlPointSet& points);

// Dense flow files: float32 magic 202021.25, int32 width, int32 height,
// then row-major interleaved (u, v) float32. Everything little-endian.
inline constexpr float kFlowMagic = 202021.25f;

FlowField decode_flow(std::string_view bytes);
std::string encode_flow(const FlowField& flow);
FlowField read_flow(const std::filesystem::path& path);
void write_flow(const std::filesystem::path& path, const FlowField& flow);

// 8-bit grayscale or RGB images: PNG, binary PGM (P5) or PPM (P6).
// Read maps v -> v/255; write maps s -> round(255 s).
Image read_image(const std::filesystem::path& path);
void write_image(const std::filesystem::path& path, const Image& img);

std::uint8_t quantize_sample(double s);

std::string read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::string_view bytes);

}  // namespace ctps
