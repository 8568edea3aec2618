#include <gtest/gtest.h>

#include <cstring>
#include <fstream>
#include <random>

#include "ctps/errors.hpp"
#include "ctps/formats.hpp"
#include "test_support.hpp"

using namespace ctps;
using ctps::testing::random_texture;
using ctps::testing::scratch_dir;

TEST(PointsFormat, ParsesCanonicalDocument) {
  const ControlPointSet pts = parse_points(R"({"width":512,"height":384,"points":[[0,0],[511,383]]})");
  EXPECT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts.frame_width(), 512);
  EXPECT_EQ(pts.frame_height(), 384);
  EXPECT_EQ(pts[1], (Point2{511, 383}));
}

TEST(PointsFormat, CanonicalBytesRoundTrip) {
  const std::string doc = "{\"width\":512,\"height\":384,\"points\":[[0,0],[63.875,0.1],[-2.5,1e+20]]}\n";
  EXPECT_EQ(format_points(parse_points(doc)), doc);
}

TEST(PointsFormat, RandomCoordinatesRoundTripExactly) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1000.0, 1000.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point2> v(10);
    for (auto& p : v) p = {u(rng), u(rng)};
    const ControlPointSet pts(v, 640, 480);
    const std::string text = format_points(pts);
    EXPECT_EQ(parse_points(text), pts);
    EXPECT_EQ(format_points(parse_points(text)), text);
  }
}

TEST(PointsFormat, Errors) {
  try {
    parse_points(R"({"width":512,"height":384})");
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.field(), "points");
  }
  try {
    parse_points(R"({"height":384,"points":[]})");
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.field(), "width");
  }
  EXPECT_THROW(parse_points(R"({"width":512,"height":384,"points":[[1]]})"), SchemaError);
  try {
    parse_points(R"({"width":512, "height":)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_GT(e.byte_offset(), 10u);
  }
}

TEST(FlowFormat, TwoByTwoZeroFlowIs44Bytes) {
  const std::string bytes = encode_flow(FlowField(2, 2));
  ASSERT_EQ(bytes.size(), 44u);
  float magic;
  std::memcpy(&magic, bytes.data(), 4);
  EXPECT_EQ(magic, 202021.25f);
  EXPECT_EQ(bytes.substr(0, 4), "PIEH");
}

TEST(FlowFormat, RoundTripIsBitExact) {
  std::mt19937 rng(1);
  std::uniform_real_distribution<float> u(-50.f, 50.f);
  std::vector<Displacement> v(13 * 7);
  for (auto& d : v) d = {u(rng), u(rng)};
  const FlowField f(13, 7, v);
  const std::string bytes = encode_flow(f);
  EXPECT_EQ(decode_flow(bytes), f);
  EXPECT_EQ(encode_flow(decode_flow(bytes)), bytes);

  const auto dir = scratch_dir("flow_rt");
  write_flow(dir / "f.flo", f);
  EXPECT_EQ(read_flow(dir / "f.flo"), f);
}

TEST(FlowFormat, Errors) {
  std::string bytes = encode_flow(FlowField(3, 3));
  std::string zero_magic = bytes;
  std::memset(zero_magic.data(), 0, 4);
  EXPECT_THROW(decode_flow(zero_magic), BadMagic);
  EXPECT_THROW(decode_flow(bytes.substr(0, 8)), TruncatedFile);
  EXPECT_THROW(decode_flow(bytes.substr(0, bytes.size() - 1)), TruncatedFile);
}

TEST(ImageFormat, EightBitValuesMapExactly) {
  const auto dir = scratch_dir("img_values");
  std::string pgm = "P5\n3 1\n255\n";
  pgm += static_cast<char>(255);
  pgm += static_cast<char>(128);
  pgm += static_cast<char>(0);
  write_file_bytes(dir / "v.pgm", pgm);
  const Image img = read_image(dir / "v.pgm");
  EXPECT_EQ(img.at(0, 0, 0), 1.0);
  EXPECT_EQ(img.at(1, 0, 0), 128.0 / 255.0);
  EXPECT_NEAR(img.at(1, 0, 0), 0.50196, 1e-5);
  write_image(dir / "back.pgm", img);
  EXPECT_EQ(read_file_bytes(dir / "back.pgm"), pgm);
}

TEST(ImageFormat, PngAndPnmRoundTripValues) {
  const auto dir = scratch_dir("img_rt");
  for (int channels : {1, 3}) {
    Image q = random_texture(23, 17, channels, 3);
    // Quantize first so the round trip is value-exact.
    std::vector<double> s = q.samples();
    for (double& v : s) v = quantize_sample(v) / 255.0;
    const Image img(23, 17, channels, s);
    write_image(dir / "a.png", img);
    EXPECT_EQ(read_image(dir / "a.png"), img);
    const auto pnm = dir / (channels == 1 ? "a.pgm" : "a.ppm");
    write_image(pnm, img);
    EXPECT_EQ(read_image(pnm), img);
  }
}

TEST(ImageFormat, RejectsUnsupportedInputs) {
  const auto dir = scratch_dir("img_bad");
  // 2x2 16-bit grayscale PNG.
  static constexpr unsigned char kPng16[] = {0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a, 0x00, 0x00, 0x00, 0x0d, 0x49, 0x48, 0x44, 0x52, 0x00, 0x00, 0x00, 0x02, 0x00, 0x00, 0x00, 0x02, 0x10, 0x00, 0x00, 0x00, 0x00, 0x07, 0x4d, 0x8e, 0xbb, 0x00, 0x00, 0x00, 0x0b, 0x49, 0x44, 0x41, 0x54, 0x78, 0x9c, 0x63, 0x60, 0x80, 0x01, 0x00, 0x00, 0x0a, 0x00, 0x01, 0x7f, 0x80, 0x74, 0x5e, 0x00, 0x00, 0x00, 0x00, 0x49, 0x45, 0x4e, 0x44, 0xae, 0x42, 0x60, 0x82};
  write_file_bytes(dir / "deep.png", std::string(reinterpret_cast<const char*>(kPng16), sizeof kPng16));
  EXPECT_THROW(read_image(dir / "deep.png"), UnsupportedFormat);
  write_file_bytes(dir / "deep.pgm", std::string("P5\n1 1\n65535\n\x01\x02", 15));
  EXPECT_THROW(read_image(dir / "deep.pgm"), UnsupportedFormat);
  write_file_bytes(dir / "x.bmp", "BM1234");
  EXPECT_THROW(read_image(dir / "x.bmp"), UnsupportedFormat);
  write_file_bytes(dir / "short.pgm", "P5\n4 4\n255\n\x01");
  EXPECT_THROW(read_image(dir / "short.pgm"), DecodeError);
  EXPECT_THROW(read_image(dir / "missing.png"), IoError);
  EXPECT_THROW(write_image(dir / "out.tiff", Image(2, 2, 1)), UnsupportedFormat);
}
