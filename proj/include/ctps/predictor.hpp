#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "ctps/geometry.hpp"
#include "ctps/image.hpp"
#include "ctps/layout.hpp"

namespace ctps {

/// Source-point predictor queried once per iteration.
///
/// `current` is the input warped by the accumulated flow so far; `iteration`
/// counts from 0. The returned set must match the layout's count and frame.
class Predictor {
 public:
  virtual ~Predictor() = default;
  virtual ControlPointSet predict(const Image& current, const ControlLayout& layout, int iteration) = 0;

  /// When false, run_coupled skips rendering `current` and passes the input.
  virtual bool needs_image() const { return false; }

  /// Known content tilt in degrees, used to report the residual rotation.
  virtual std::optional<double> nominal_tilt() const { return std::nullopt; }
};

enum class PredictorKind { identity, rotation_oracle, file };

struct PredictorSpec {
  PredictorKind kind = PredictorKind::identity;
  // rotation_oracle: step i corrects gain * initial_angle * (1 - gain)^i,
  // unless an explicit list of per-iteration steps is given.
  double initial_angle = 0.0;
  double gain = 1.0;
  std::vector<double> steps;
  // file: iter_0.json, iter_1.json, ...
  std::filesystem::path directory;

  static PredictorSpec identity() { return {}; }
  static PredictorSpec rotation_oracle(double initial_angle, double gain);
  static PredictorSpec rotation_steps(std::vector<double> steps);
  static PredictorSpec from_directory(std::filesystem::path dir);
};

/// Parses "identity", "rotation-oracle:angle=8,gain=0.5",
/// "rotation-oracle:steps=3/3/2" or "file:DIR". Throws InvalidArgument.
PredictorSpec parse_predictor_spec(std::string_view text);

std::unique_ptr<Predictor> make_predictor(const PredictorSpec& spec);

}  // namespace ctps
