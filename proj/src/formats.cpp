#include "ctps/formats.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <vector>

#include <json.hpp>

#include "ctps/errors.hpp"

namespace ctps {
namespace {

static_assert(std::endian::native == std::endian::little, "flow codec assumes a little-endian host");
static_assert(std::numeric_limits<float>::is_iec559);

void append_number(std::string& out, double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

int integer_field(const nlohmann::json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end() || !it->is_number_integer()) throw SchemaError(key);
  const auto v = it->get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) throw SchemaError(key);
  return static_cast<int>(v);
}

template <typename T>
void put(std::string& out, T value) {
  char raw[sizeof(T)];
  std::memcpy(raw, &value, sizeof(T));
  out.append(raw, sizeof(T));
}

template <typename T>
T get(std::string_view bytes, std::size_t offset) {
  T value;
  std::memcpy(&value, bytes.data() + offset, sizeof(T));
  return value;
}

}  // namespace

ControlPointSet parse_points(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed control-point document: ") + e.what(), e.byte);
  }
  if (!doc.is_object()) throw SchemaError("<root>");
  const int width = integer_field(doc, "width");
  const int height = integer_field(doc, "height");
  const auto pts = doc.find("points");
  if (pts == doc.end() || !pts->is_array()) throw SchemaError("points");

  std::vector<Point2> points;
  points.reserve(pts->size());
  for (const auto& p : *pts) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw SchemaError("points");
    }
    points.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  try {
    return ControlPointSet(std::move(points), width, height);
  } catch (const InvalidDimensions&) {
    throw SchemaError("width/height");
  } catch (const InvalidArgument&) {
    throw SchemaError("points");
  }
}

std::string format_points(const ControlPointSet& points) {
  std::string out = "{\"width\":" + std::to_string(points.frame_width()) +
                    ",\"height\":" + std::to_string(points.frame_height()) + ",\"points\":[";
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i) out += ',';
    out += '[';
    append_number(out, points[i].x);
    out += ',';
    append_number(out, points[i].y);
    out += ']';
  }
  out += "]}\n";
  return out;
}

ControlPointSet read_points(const std::filesystem::path& path) { return parse_points(read_file_bytes(path)); }

void write_points(const std::filesystem::path& path, const ControlPointSet& points) {
  write_file_bytes(path, format_points(points));
}

FlowField decode_flow(std::string_view bytes) {
  if (bytes.size() < 12) throw TruncatedFile("flow file shorter than its 12-byte header");
  if (std::memcmp(bytes.data(), "PIEH", 4) != 0) throw BadMagic("flow file magic is not 202021.25");
  const auto width = get<std::int32_t>(bytes, 4);
  const auto height = get<std::int32_t>(bytes, 8);
  if (width < 2 || height < 2) throw InvalidDimensions("flow file header declares a frame below 2x2");
  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (bytes.size() < 12 + count * 8) throw TruncatedFile("flow file payload is truncated");

  std::vector<Displacement> vectors(count);
  for (std::size_t i = 0; i < count; ++i) {
    vectors[i] = {get<float>(bytes, 12 + 8 * i), get<float>(bytes, 16 + 8 * i)};
  }
  return FlowField(width, height, std::move(vectors));
}

std::string encode_flow(const FlowField& flow) {
  std::string out;
  out.reserve(12 + flow.vectors().size() * 8);
  put(out, kFlowMagic);
  put(out, static_cast<std::int32_t>(flow.width()));
  put(out, static_cast<std::int32_t>(flow.height()));
  for (const Displacement& d : flow.vectors()) {
    put(out, static_cast<float>(d.u));
    put(out, static_cast<float>(d.v));
  }
  return out;
}

FlowField read_flow(const std::filesystem::path& path) { return decode_flow(read_file_bytes(path)); }

void write_flow(const std::filesystem::path& path, const FlowField& flow) {
  write_file_bytes(path, encode_flow(flow));
}

std::string read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file_bytes(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace ctps
