#include "ctps/coupled.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ctps/errors.hpp"
#include "ctps/tps.hpp"
#include "ctps/warp.hpp"

namespace ctps {
namespace {

MetricReport evaluate(const Image& img, const Image& reference, double crop) {
  if (crop >= 1.0) return measure(img, reference);
  return measure(crop_center(img, crop), crop_center(reference, crop));
}

}  // namespace

CoupledResult run_coupled(const Image& input, const ControlLayout& layout, Predictor& predictor,
                          const RunOptions& options) {
  if (options.iterations < 1) throw InvalidArgument("iteration count must be at least 1");
  if (layout.points.frame_width() != input.width() || layout.points.frame_height() != input.height()) {
    throw DimensionMismatch("layout frame " + std::to_string(layout.points.frame_width()) + "x" +
                            std::to_string(layout.points.frame_height()) + " does not match the image");
  }
  if (options.reference && !options.reference->same_shape(input)) {
    throw DimensionMismatch("reference image does not match the input");
  }

  const PixelGrid grid = make_grid(input.width(), input.height());
  const std::optional<double> tilt = predictor.nominal_tilt();
  FlowField flow(input.width(), input.height());
  CoupledResult result{flow, input, {}, {}, 0};

  // Image the predictor sees; rendered from the input through the coupled flow.
  std::optional<Image> current;
  for (int i = 0; i < options.iterations; ++i) {
    const Image& view = current ? *current : input;
    ControlPointSet sources = predictor.predict(view, layout, i);
    if (sources.size() != layout.points.size()) {
      throw PredictorFailure("predictor returned " + std::to_string(sources.size()) + " points for a " +
                             std::to_string(layout.points.size()) + "-point layout");
    }
    const TpsTransform inverse_map = solve_tps(layout.points, sources);
    FlowField delta = tps_to_flow(inverse_map, grid);
    flow = compose_flows(flow, delta);

    IterationRecord rec{i, std::move(sources), flow_stats(delta), flow_stats(flow), estimate_rotation(flow),
                        std::nullopt, std::nullopt};
    if (tilt) rec.residual_rotation_deg = *tilt - rec.flow_rotation_deg;

    const bool last = i + 1 == options.iterations;
    if (options.reference || (predictor.needs_image() && !last)) {
      current = backward_warp(input, flow);
      if (options.reference) rec.metrics = evaluate(*current, *options.reference, options.metric_crop);
    }
    result.report.push_back(std::move(rec));
    result.delta_flows.push_back(std::move(delta));
  }

  result.image = current && options.reference ? std::move(*current) : backward_warp(input, flow);
  result.flow = std::move(flow);
  result.interpolation_depth = 1;
  return result;
}

CouplingComparison compare_coupling_modes(const Image& input, const ControlLayout& layout,
                                          Predictor& predictor, const RunOptions& options) {
  if (!options.reference) throw InvalidArgument("comparing coupling modes needs a reference image");
  CoupledResult coupled = run_coupled(input, layout, predictor, options);

  Image iterative = input;
  int depth = 0;
  for (const FlowField& delta : coupled.delta_flows) {
    iterative = backward_warp(iterative, delta);
    ++depth;
  }
  const MetricReport cm = evaluate(coupled.image, *options.reference, options.metric_crop);
  const MetricReport im = evaluate(iterative, *options.reference, options.metric_crop);
  return {std::move(coupled), std::move(iterative), depth, cm, im};
}

// Minimizes sum |R(t) d - g|^2 with d = x - c and g = d + f(x); for
// R = [[cos, sin], [-sin, cos]] the optimum is atan2(sum g x d, sum g . d).
double estimate_rotation(const FlowField& f) {
  const Point2 c = frame_center(f.width(), f.height());
  double cross = 0.0;
  double dot = 0.0;
  for (int y = 0; y < f.height(); ++y) {
    for (int x = 0; x < f.width(); ++x) {
      const double dx = x - c.x;
      const double dy = y - c.y;
      const Displacement& v = f.at(x, y);
      const double gx = dx + v.u;
      const double gy = dy + v.v;
      cross += gx * dy - gy * dx;
      dot += gx * dx + gy * dy;
    }
  }
  return std::atan2(cross, dot) * 180.0 / std::numbers::pi;
}

}  // namespace ctps
