#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <string_view>

#include "ctps/coupled.hpp"
#include "ctps/dual.hpp"
#include "ctps/errors.hpp"
#include "ctps/formats.hpp"
#include "ctps/layout.hpp"
#include "ctps/metrics.hpp"
#include "ctps/predictor.hpp"
#include "ctps/tps.hpp"
#include "ctps/warp.hpp"

namespace ctps::cli {
namespace {

void require_frame(const ControlPointSet& pts, const Image& img, const std::string& what) {
  if (pts.frame_width() != img.width() || pts.frame_height() != img.height()) {
    throw DimensionMismatch(what + " frame " + std::to_string(pts.frame_width()) + "x" +
                            std::to_string(pts.frame_height()) + " does not match the image " +
                            std::to_string(img.width()) + "x" + std::to_string(img.height()));
  }
}

Json points_json(const ControlPointSet& pts) {
  Json arr = Json::array();
  for (const Point2& p : pts.points()) arr.push_back({p.x, p.y});
  return arr;
}

Json metrics_json(const MetricReport& m) { return {{"psnr", json_number(m.psnr)}, {"ssim", json_number(m.ssim)}}; }

// "uniform", "portrait", "boundary-dense" or "chebyshev", optionally ":RxC".
ControlLayout preset_layout(std::string_view spec, int width, int height) {
  const auto colon = spec.find(':');
  const std::string_view name = spec.substr(0, colon);
  const bool dense = name == "portrait" || name == "boundary-dense" || name == "chebyshev";
  if (!dense && name != "uniform") throw InvalidArgument("unknown layout preset '" + std::string(name) + "'");

  int rows = dense ? kPortraitPresetRows : kUniformPresetRows;
  int cols = dense ? kPortraitPresetCols : kUniformPresetCols;
  if (colon != std::string_view::npos) {
    const std::string_view dims = spec.substr(colon + 1);
    const auto x = dims.find('x');
    if (x == std::string_view::npos) throw InvalidArgument("layout size must be RxC");
    const auto parse = [](std::string_view s) {
      int v = 0;
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size()) throw InvalidArgument("bad layout size");
      return v;
    };
    rows = parse(dims.substr(0, x));
    cols = parse(dims.substr(x + 1));
  }
  return dense ? boundary_dense_layout(rows, cols, width, height) : uniform_layout(rows, cols, width, height);
}

DistanceKind parse_distance(const std::string& name) {
  if (name == "mean_abs") return DistanceKind::mean_abs;
  if (name == "mean_sq") return DistanceKind::mean_sq;
  throw InvalidArgument("unknown distance '" + name + "' (mean_abs or mean_sq)");
}

Json record_json(const IterationRecord& r) {
  Json j = {{"iteration", r.iteration},
            {"delta_mean_px", r.delta.mean_magnitude},
            {"delta_max_px", r.delta.max_magnitude},
            {"flow_mean_px", r.accumulated.mean_magnitude},
            {"flow_max_px", r.accumulated.max_magnitude},
            {"flow_rotation_deg", r.flow_rotation_deg}};
  if (r.residual_rotation_deg) j["residual_rotation_deg"] = *r.residual_rotation_deg;
  if (r.metrics) j["metrics"] = metrics_json(*r.metrics);
  j["sources"] = points_json(r.sources);
  return j;
}

}  // namespace

Json json_number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const DegenerateConfiguration*>(&e)) return kExitDegenerate;
  if (dynamic_cast<const PredictorFailure*>(&e)) return kExitPredictor;
  return kExitUsage;
}

Json cmd_grid(const GridOptions& o) {
  ControlLayout layout = [&] {
    if (o.layout == "uniform") return uniform_layout(o.rows, o.cols, o.width, o.height);
    if (o.layout == "chebyshev" || o.layout == "boundary-dense") {
      return boundary_dense_layout(o.rows, o.cols, o.width, o.height);
    }
    throw InvalidArgument("unknown layout '" + o.layout + "' (uniform or chebyshev)");
  }();
  write_points(o.out, layout.points);
  return {{"points", layout.points.size()}, {"out", o.out}};
}

Json cmd_warp(const WarpOptions& o) {
  const Image img = read_image(o.image);
  const ControlPointSet layout = read_points(o.sources);
  const ControlPointSet predicted = read_points(o.targets);
  require_frame(layout, img, "sources");
  require_frame(predicted, img, "targets");

  const TpsTransform inverse_map = solve_tps(layout, predicted);
  const FlowField flow = tps_to_flow(inverse_map, make_grid(img.width(), img.height()));
  write_image(o.out, backward_warp(img, flow));
  if (!o.flow.empty()) write_flow(o.flow, flow);

  const FlowStats stats = flow_stats(flow);
  return {{"points", layout.size()},
          {"bending_energy", bending_energy(inverse_map)},
          {"flow_mean_px", stats.mean_magnitude},
          {"flow_max_px", stats.max_magnitude}};
}

Json cmd_iterate(const IterateOptions& o) {
  if (o.iterations < 1) throw InvalidArgument("--iters must be at least 1");
  const Image input = read_image(o.image);
  ControlLayout layout = [&] {
    if (o.layout_file.empty()) return preset_layout(o.layout_preset, input.width(), input.height());
    ControlPointSet pts = read_points(o.layout_file);
    require_frame(pts, input, "layout");
    return ControlLayout{LayoutKind::uniform, 0, 0, std::move(pts)};
  }();
  auto predictor = make_predictor(parse_predictor_spec(o.predictor));

  std::optional<Image> reference;
  if (!o.reference.empty()) reference = read_image(o.reference);
  if (o.compare_iterative && !reference) throw InvalidArgument("--compare-iterative needs --reference");

  RunOptions run{o.iterations, reference ? &*reference : nullptr, o.crop};
  Json result;
  const auto emit = [&](const CoupledResult& r) {
    write_image(o.out, r.image);
    if (!o.flow.empty()) write_flow(o.flow, r.flow);
    Json its = Json::array();
    for (const auto& rec : r.report) its.push_back(record_json(rec));
    result["layout_points"] = layout.points.size();
    result["iterations"] = std::move(its);
    result["final_flow_rotation_deg"] = estimate_rotation(r.flow);
    result["interpolation_depth"] = r.interpolation_depth;
  };

  if (o.compare_iterative) {
    CouplingComparison cmp = compare_coupling_modes(input, layout, *predictor, run);
    emit(cmp.coupled);
    if (!o.iterative_out.empty()) write_image(o.iterative_out, cmp.iterative_image);
    result["comparison"] = {
        {"coupled", metrics_json(cmp.coupled_metrics)},
        {"iterative", metrics_json(cmp.iterative_metrics)},
        {"coupled_interpolations", cmp.coupled.interpolation_depth},
        {"iterative_interpolations", cmp.iterative_interpolation_depth},
        {"psnr_gain_db", json_number(cmp.coupled_metrics.psnr - cmp.iterative_metrics.psnr)}};
  } else {
    CoupledResult r = run_coupled(input, layout, *predictor, run);
    emit(r);
    if (reference) {
      const Image& test = r.image;
      result["metrics"] = metrics_json(o.crop >= 1.0 ? measure(test, *reference)
                                                     : measure(crop_center(test, o.crop),
                                                               crop_center(*reference, o.crop)));
    }
  }
  return result;
}

Json cmd_dual(const DualOptions& o) {
  UnlabeledPair pair{read_image(o.image_a), read_image(o.image_b), read_points(o.points_a),
                     read_points(o.points_b)};
  require_frame(pair.points_a, pair.image_a, "points-a");
  require_frame(pair.points_b, pair.image_b, "points-b");
  LossConfig cfg;
  cfg.distance = parse_distance(o.distance);
  cfg.margin = o.margin;

  const auto [to_b, to_a] = dual_warp(pair);
  if (!o.out_a.empty()) write_image(o.out_a, to_b);
  if (!o.out_b.empty()) write_image(o.out_b, to_a);
  const double d_b = patch_distance(to_b, pair.image_b, cfg.distance, cfg.margin);
  const double d_a = patch_distance(to_a, pair.image_a, cfg.distance, cfg.margin);
  return {{"distance", o.distance},
          {"margin", o.margin},
          {"term_a_to_b", d_b},
          {"term_b_to_a", d_a},
          {"unlabeled_loss", d_b + d_a}};
}

Json cmd_metrics(const MetricsOptions& o) {
  const Image ref = read_image(o.ref);
  const Image test = read_image(o.test);
  const MetricReport m =
      o.crop >= 1.0 ? measure(test, ref) : measure(crop_center(test, o.crop), crop_center(ref, o.crop));
  return metrics_json(m);
}

Json cmd_resize_flow(const ResizeFlowOptions& o) {
  const FlowField in = read_flow(o.in);
  const FlowField out = resize_flow(in, o.width, o.height);
  write_flow(o.out, out);
  return {{"from", {in.width(), in.height()}}, {"to", {out.width(), out.height()}}};
}

}  // namespace ctps::cli
