#pragma once

#include <string>

#include <json.hpp>

namespace ctps::cli {

using Json = nlohmann::ordered_json;

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;       // bad arguments, I/O, schema, dimension errors
inline constexpr int kExitDegenerate = 3;  // singular TPS systems
inline constexpr int kExitPredictor = 4;   // predictor ran out of / returned bad points

struct GridOptions {
  int rows = 7;
  int cols = 9;
  int width = 512;
  int height = 384;
  std::string layout = "uniform";
  std::string out;
};

struct WarpOptions {
  std::string image;
  std::string sources;
  std::string targets;
  std::string out;
  std::string flow;
};

struct IterateOptions {
  std::string image;
  std::string layout_file;
  std::string layout_preset = "uniform";
  std::string predictor = "identity";
  int iterations = 3;
  std::string reference;
  bool compare_iterative = false;
  double crop = 1.0;
  std::string out;
  std::string flow;
  std::string iterative_out;
};

struct DualOptions {
  std::string image_a;
  std::string image_b;
  std::string points_a;
  std::string points_b;
  std::string out_a;
  std::string out_b;
  std::string distance = "mean_abs";
  int margin = 0;
};

struct MetricsOptions {
  std::string ref;
  std::string test;
  double crop = 1.0;
};

struct ResizeFlowOptions {
  std::string in;
  std::string out;
  int width = 0;
  int height = 0;
};

// Each command returns its "result" section and throws on failure.
Json cmd_grid(const GridOptions& o);
Json cmd_warp(const WarpOptions& o);
Json cmd_iterate(const IterateOptions& o);
Json cmd_dual(const DualOptions& o);
Json cmd_metrics(const MetricsOptions& o);
Json cmd_resize_flow(const ResizeFlowOptions& o);

int exit_code_for(const std::exception& e);

/// Numbers as JSON numbers; non-finite values as "inf", "-inf" or "nan".
Json json_number(double v);

}  // namespace ctps::cli
