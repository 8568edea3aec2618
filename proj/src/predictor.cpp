#include "ctps/predictor.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <string>

#include "ctps/errors.hpp"
#include "ctps/formats.hpp"

namespace ctps {
namespace {

class IdentityPredictor final : public Predictor {
 public:
  ControlPointSet predict(const Image&, const ControlLayout& layout, int) override { return layout.points; }
};

class RotationOracle final : public Predictor {
 public:
  explicit RotationOracle(PredictorSpec spec) : spec_(std::move(spec)) {}

  ControlPointSet predict(const Image&, const ControlLayout& layout, int iteration) override {
    const double step = step_for(iteration);
    const Point2 c = frame_center(layout.points.frame_width(), layout.points.frame_height());
    return layout.points.transformed([&](Point2 p) { return rotate_about(p, c, step); });
  }

  std::optional<double> nominal_tilt() const override {
    if (!spec_.steps.empty() && spec_.initial_angle == 0.0) {
      return std::accumulate(spec_.steps.begin(), spec_.steps.end(), 0.0);
    }
    return spec_.initial_angle;
  }

 private:
  double step_for(int iteration) const {
    if (!spec_.steps.empty()) {
      if (iteration >= static_cast<int>(spec_.steps.size())) {
        throw PredictorFailure("rotation oracle has no step for iteration " + std::to_string(iteration));
      }
      return spec_.steps[static_cast<std::size_t>(iteration)];
    }
    return spec_.gain * spec_.initial_angle * std::pow(1.0 - spec_.gain, iteration);
  }

  PredictorSpec spec_;
};

class FilePredictor final : public Predictor {
 public:
  explicit FilePredictor(std::filesystem::path dir) : dir_(std::move(dir)) {}

  ControlPointSet predict(const Image&, const ControlLayout& layout, int iteration) override {
    const auto path = dir_ / ("iter_" + std::to_string(iteration) + ".json");
    if (!std::filesystem::exists(path)) {
      throw PredictorFailure("no recorded point set for iteration " + std::to_string(iteration) + " (" +
                             path.string() + ")");
    }
    ControlPointSet pts = [&] {
      try {
        return read_points(path);
      } catch (const FormatError& e) {
        throw PredictorFailure(path.string() + ": " + e.what());
      }
    }();
    if (pts.size() != layout.points.size()) {
      throw PredictorFailure(path.string() + " holds " + std::to_string(pts.size()) + " points, layout has " +
                             std::to_string(layout.points.size()));
    }
    if (pts.frame_width() != layout.points.frame_width() || pts.frame_height() != layout.points.frame_height()) {
      throw PredictorFailure(path.string() + " frame differs from the layout frame");
    }
    return pts;
  }

 private:
  std::filesystem::path dir_;
};

double parse_number(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw InvalidArgument("bad " + std::string(what) + " value '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

PredictorSpec PredictorSpec::rotation_oracle(double initial_angle, double gain) {
  if (!(gain > 0.0 && gain <= 1.0)) throw InvalidArgument("oracle gain must lie in (0, 1]");
  PredictorSpec s;
  s.kind = PredictorKind::rotation_oracle;
  s.initial_angle = initial_angle;
  s.gain = gain;
  return s;
}

PredictorSpec PredictorSpec::rotation_steps(std::vector<double> steps) {
  if (steps.empty()) throw InvalidArgument("oracle step list is empty");
  PredictorSpec s;
  s.kind = PredictorKind::rotation_oracle;
  s.steps = std::move(steps);
  return s;
}

PredictorSpec PredictorSpec::from_directory(std::filesystem::path dir) {
  PredictorSpec s;
  s.kind = PredictorKind::file;
  s.directory = std::move(dir);
  return s;
}

PredictorSpec parse_predictor_spec(std::string_view text) {
  if (text == "identity") return PredictorSpec::identity();

  const auto colon = text.find(':');
  const std::string_view kind = text.substr(0, colon);
  const std::string_view args = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);

  if (kind == "file") {
    if (args.empty()) throw InvalidArgument("file predictor needs a directory: file:DIR");
    return PredictorSpec::from_directory(std::filesystem::path(std::string(args)));
  }
  if (kind == "rotation-oracle") {
    std::optional<double> angle;
    std::optional<double> gain;
    std::vector<double> steps;
    if (args.empty()) throw InvalidArgument("rotation-oracle needs angle=A,gain=G or steps=S1/S2/...");
    for (std::string_view kv : split(args, ',')) {
      const auto eq = kv.find('=');
      if (eq == std::string_view::npos) throw InvalidArgument("expected key=value in '" + std::string(kv) + "'");
      const auto key = kv.substr(0, eq);
      const auto value = kv.substr(eq + 1);
      if (key == "angle") {
        angle = parse_number(value, "angle");
      } else if (key == "gain") {
        gain = parse_number(value, "gain");
      } else if (key == "steps") {
        for (auto part : split(value, '/')) steps.push_back(parse_number(part, "step"));
      } else {
        throw InvalidArgument("unknown rotation-oracle parameter '" + std::string(key) + "'");
      }
    }
    if (!steps.empty()) {
      if (gain) throw InvalidArgument("rotation-oracle takes either gain or steps, not both");
      PredictorSpec s = PredictorSpec::rotation_steps(std::move(steps));
      if (angle) s.initial_angle = *angle;
      return s;
    }
    if (!angle) throw InvalidArgument("rotation-oracle needs angle=A");
    return PredictorSpec::rotation_oracle(*angle, gain.value_or(1.0));
  }
  throw InvalidArgument("unknown predictor '" + std::string(text) + "'");
}

std::unique_ptr<Predictor> make_predictor(const PredictorSpec& spec) {
  switch (spec.kind) {
    case PredictorKind::identity:
      return std::make_unique<IdentityPredictor>();
    case PredictorKind::rotation_oracle:
      return std::make_unique<RotationOracle>(spec);
    case PredictorKind::file:
      return std::make_unique<FilePredictor>(spec.directory);
  }
  throw InvalidArgument("unknown predictor kind");
}

}  // namespace ctps
