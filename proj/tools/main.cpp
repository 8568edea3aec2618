// ctps: command-line front end for the coupled thin-plate-spline engine.
#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "ctps/parallel.hpp"

namespace {

using ctps::cli::Json;

struct Invocation {
  std::string name;
  Json options;
  std::function<Json()> run;
};

int emit_report(const Json& report, const std::string& path) {
  const std::string text = report.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) {
    std::cerr << "ctps: cannot write report " << path << "\n";
    return ctps::cli::kExitUsage;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coupled thin-plate-spline warping"};
  app.require_subcommand(1);
  int threads = 1;
  std::string report_path;
  app.add_option("--threads", threads, "Worker threads (does not change any output)")->check(CLI::PositiveNumber);

  Invocation inv;

  ctps::cli::GridOptions grid;
  auto* c_grid = app.add_subcommand("grid", "Write a control-point layout");
  c_grid->add_option("--rows", grid.rows)->required();
  c_grid->add_option("--cols", grid.cols)->required();
  c_grid->add_option("--width", grid.width);
  c_grid->add_option("--height", grid.height);
  c_grid->add_option("--layout", grid.layout, "uniform | chebyshev");
  c_grid->add_option("--out", grid.out)->required();
  c_grid->add_option("--report", report_path);
  c_grid->callback([&] {
    inv = {"grid",
           {{"rows", grid.rows}, {"cols", grid.cols}, {"width", grid.width}, {"height", grid.height},
            {"layout", grid.layout}, {"out", grid.out}},
           [&] { return ctps::cli::cmd_grid(grid); }};
  });

  ctps::cli::WarpOptions warp;
  auto* c_warp = app.add_subcommand("warp", "Solve one TPS and warp an image");
  c_warp->add_option("--image", warp.image)->required();
  c_warp->add_option("--sources", warp.sources, "Layout points on the output frame")->required();
  c_warp->add_option("--targets", warp.targets, "Matching sampling positions in the input")->required();
  c_warp->add_option("--out", warp.out)->required();
  c_warp->add_option("--flow", warp.flow);
  c_warp->add_option("--report", report_path);
  c_warp->callback([&] {
    inv = {"warp",
           {{"image", warp.image}, {"sources", warp.sources}, {"targets", warp.targets}, {"out", warp.out},
            {"flow", warp.flow}},
           [&] { return ctps::cli::cmd_warp(warp); }};
  });

  ctps::cli::IterateOptions it;
  auto* c_it = app.add_subcommand("iterate", "Run the coupled iteration loop");
  c_it->add_option("--image", it.image)->required();
  auto* layout_file = c_it->add_option("--layout-file", it.layout_file);
  c_it->add_option("--layout-preset", it.layout_preset, "uniform | portrait, optionally :RxC")
      ->excludes(layout_file);
  c_it->add_option("--predictor", it.predictor,
                   "identity | rotation-oracle:angle=A,gain=G | rotation-oracle:steps=S1/S2/... | file:DIR");
  c_it->add_option("--iters", it.iterations);
  c_it->add_option("--reference", it.reference);
  c_it->add_flag("--compare-iterative", it.compare_iterative);
  c_it->add_option("--crop", it.crop, "Centered fraction used for metrics")->check(CLI::Range(0.01, 1.0));
  c_it->add_option("--out", it.out)->required();
  c_it->add_option("--flow", it.flow);
  c_it->add_option("--iterative-out", it.iterative_out);
  c_it->add_option("--report", report_path);
  c_it->callback([&] {
    inv = {"iterate",
           {{"image", it.image}, {"layout_file", it.layout_file}, {"layout_preset", it.layout_preset},
            {"predictor", it.predictor}, {"iters", it.iterations}, {"reference", it.reference},
            {"compare_iterative", it.compare_iterative}, {"crop", it.crop}, {"out", it.out},
            {"flow", it.flow}, {"iterative_out", it.iterative_out}},
           [&] { return ctps::cli::cmd_iterate(it); }};
  });

  ctps::cli::DualOptions dual;
  auto* c_dual = app.add_subcommand("dual", "Mutual warps of an unlabeled pair and their consistency loss");
  c_dual->add_option("--image-a", dual.image_a)->required();
  c_dual->add_option("--image-b", dual.image_b)->required();
  c_dual->add_option("--points-a", dual.points_a)->required();
  c_dual->add_option("--points-b", dual.points_b)->required();
  c_dual->add_option("--out-a", dual.out_a, "image-a warped towards image-b");
  c_dual->add_option("--out-b", dual.out_b, "image-b warped towards image-a");
  c_dual->add_option("--distance", dual.distance, "mean_abs | mean_sq");
  c_dual->add_option("--margin", dual.margin, "Border pixels excluded from distances");
  c_dual->add_option("--report", report_path);
  c_dual->callback([&] {
    inv = {"dual",
           {{"image_a", dual.image_a}, {"image_b", dual.image_b}, {"points_a", dual.points_a},
            {"points_b", dual.points_b}, {"out_a", dual.out_a}, {"out_b", dual.out_b},
            {"distance", dual.distance}, {"margin", dual.margin}},
           [&] { return ctps::cli::cmd_dual(dual); }};
  });

  ctps::cli::MetricsOptions met;
  auto* c_met = app.add_subcommand("metrics", "PSNR and SSIM of a test image against a reference");
  c_met->add_option("--ref", met.ref)->required();
  c_met->add_option("--test", met.test)->required();
  c_met->add_option("--crop", met.crop)->check(CLI::Range(0.01, 1.0));
  c_met->add_option("--report", report_path);
  c_met->callback([&] {
    inv = {"metrics", {{"ref", met.ref}, {"test", met.test}, {"crop", met.crop}},
           [&] { return ctps::cli::cmd_metrics(met); }};
  });

  ctps::cli::ResizeFlowOptions rf;
  auto* c_rf = app.add_subcommand("resize-flow", "Resample a flow file in size and magnitude");
  c_rf->add_option("--in", rf.in)->required();
  c_rf->add_option("--width", rf.width)->required();
  c_rf->add_option("--height", rf.height)->required();
  c_rf->add_option("--out", rf.out)->required();
  c_rf->add_option("--report", report_path);
  c_rf->callback([&] {
    inv = {"resize-flow", {{"in", rf.in}, {"width", rf.width}, {"height", rf.height}, {"out", rf.out}},
           [&] { return ctps::cli::cmd_resize_flow(rf); }};
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ctps::cli::kExitUsage;
  }

  ctps::set_thread_count(threads);
  Json report = {{"command", {{"name", inv.name}, {"options", inv.options}}}};
  const auto start = std::chrono::steady_clock::now();
  int status = ctps::cli::kExitOk;
  try {
    report["result"] = inv.run();
  } catch (const std::exception& e) {
    status = ctps::cli::exit_code_for(e);
    report["error"] = e.what();
    std::cerr << "ctps " << inv.name << ": " << e.what() << "\n";
  }
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
  report["status"] = status;
  report["timing"] = {{"elapsed_ms", elapsed.count()}};

  const int write_status = emit_report(report, report_path);
  return status != ctps::cli::kExitOk ? status : write_status;
}
