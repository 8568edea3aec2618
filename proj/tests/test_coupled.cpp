#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ctps/coupled.hpp"
#include "ctps/errors.hpp"
#include "ctps/formats.hpp"
#include "ctps/layout.hpp"
#include "ctps/tps.hpp"
#include "ctps/warp.hpp"
#include "test_support.hpp"

using namespace ctps;
using ctps::testing::checkerboard;
using ctps::testing::constant_flow;
using ctps::testing::random_texture;
using ctps::testing::rotation_flow;
using ctps::testing::scratch_dir;

namespace {

// Predicts a fixed integer translation per iteration.
class TranslationPredictor final : public Predictor {
 public:
  explicit TranslationPredictor(std::vector<Point2> steps) : steps_(std::move(steps)) {}
  ControlPointSet predict(const Image&, const ControlLayout& layout, int i) override {
    const Point2 s = steps_.at(static_cast<std::size_t>(i));
    return layout.points.transformed([&](Point2 p) { return Point2{p.x + s.x, p.y + s.y}; });
  }

 private:
  std::vector<Point2> steps_;
};

// Records the images it is shown.
class RecordingPredictor final : public Predictor {
 public:
  std::vector<Image> seen;
  ControlPointSet predict(const Image& current, const ControlLayout& layout, int i) override {
    seen.push_back(current);
    const Point2 c = frame_center(layout.points.frame_width(), layout.points.frame_height());
    return layout.points.transformed([&](Point2 p) { return rotate_about(p, c, 1.0 + i); });
  }
  bool needs_image() const override { return true; }
};

}  // namespace

TEST(UniformLayout, Examples) {
  const auto corners = uniform_layout(2, 2, 512, 384).points;
  const std::vector<Point2> expected{{0, 0}, {511, 0}, {0, 383}, {511, 383}};
  EXPECT_EQ(std::vector<Point2>(corners.points().begin(), corners.points().end()), expected);

  const ControlLayout preset = uniform_layout(7, 9, 512, 384);
  EXPECT_EQ(preset.points.size(), 63u);
  EXPECT_EQ(preset.points[1].x, 63.875);
  EXPECT_EQ(preset.points[9].y, 383.0 / 6.0);

  const auto small = uniform_layout(3, 3, 3, 3).points;
  for (int i = 0; i < 9; ++i) EXPECT_EQ(small[static_cast<std::size_t>(i)], (Point2{double(i % 3), double(i / 3)}));

  EXPECT_THROW(uniform_layout(1, 3, 10, 10), InvalidDimensions);
}

TEST(BoundaryDenseLayout, Examples) {
  const auto corners = boundary_dense_layout(2, 2, 512, 384).points;
  EXPECT_EQ(corners, uniform_layout(2, 2, 512, 384).points);

  const auto mid = boundary_dense_layout(3, 3, 101, 101).points;
  EXPECT_EQ(mid[4], (Point2{50, 50}));

  const ControlLayout portrait = boundary_dense_layout(8, 10, 512, 384);
  EXPECT_EQ(portrait.points.size(), 80u);
  const double first = portrait.points[1].x;
  EXPECT_NEAR(first, 511.0 * (1.0 - std::cos(std::numbers::pi / 9.0)) / 2.0, 1e-12);
  EXPECT_NEAR(first, 15.41, 0.01);
  EXPECT_LT(first, uniform_layout(8, 10, 512, 384).points[1].x);
  // Symmetric about the frame center.
  for (int j = 0; j < 10; ++j)
    EXPECT_NEAR(portrait.points[static_cast<std::size_t>(j)].x + portrait.points[static_cast<std::size_t>(9 - j)].x, 511.0, 1e-12);
}

TEST(EstimateRotation, Examples) {
  EXPECT_EQ(estimate_rotation(FlowField(64, 48)), 0.0);
  EXPECT_NEAR(estimate_rotation(rotation_flow(64, 48, 5.0)), 5.0, 1e-3);
  EXPECT_NEAR(estimate_rotation(rotation_flow(64, 48, -3.5)), -3.5, 1e-9);
  EXPECT_NEAR(estimate_rotation(constant_flow(64, 48, 4.0, -7.0)), 0.0, 1e-6);
}

TEST(RunCoupled, IdentityPredictorIsAFixpoint) {
  const Image img = random_texture(48, 36, 3, 2);
  auto pred = make_predictor(PredictorSpec::identity());
  for (int iters : {1, 3, 5}) {
    const CoupledResult r = run_coupled(img, uniform_layout(4, 5, 48, 36), *pred, {iters});
    EXPECT_EQ(r.flow, FlowField(48, 36));
    EXPECT_EQ(r.image, img);
    ASSERT_EQ(r.report.size(), static_cast<std::size_t>(iters));
    for (const auto& rec : r.report) EXPECT_EQ(rec.accumulated.max_magnitude, 0.0);
  }
}

TEST(RunCoupled, RotationOracleResidualDecaysGeometrically) {
  const int w = 128, h = 96;
  const ControlLayout layout = uniform_layout(5, 6, w, h);
  const Image img = checkerboard(w, h, 4, 8.0);
  for (double tilt : {2.0, 5.0, 8.0, 10.0}) {
    for (double gain : {0.3, 0.5, 1.0}) {
      auto pred = make_predictor(PredictorSpec::rotation_oracle(tilt, gain));
      const CoupledResult r = run_coupled(img, layout, *pred, {3});
      for (const auto& rec : r.report) {
        ASSERT_TRUE(rec.residual_rotation_deg.has_value());
        EXPECT_NEAR(*rec.residual_rotation_deg, tilt * std::pow(1.0 - gain, rec.iteration + 1), 0.05)
            << "tilt " << tilt << " gain " << gain << " iteration " << rec.iteration;
      }
    }
  }
}

TEST(RunCoupled, EightDegreeOracleLeavesOneDegree) {
  const Image img = checkerboard(512, 384, 4, 8.0);
  auto pred = make_predictor(PredictorSpec::rotation_oracle(8.0, 0.5));
  const CoupledResult r = run_coupled(img, uniform_layout(7, 9, 512, 384), *pred, {3});
  EXPECT_NEAR(8.0 - estimate_rotation(r.flow), 1.0, 0.05);
  EXPECT_NEAR(*r.report.back().residual_rotation_deg, 1.0, 0.05);
}

TEST(RunCoupled, SingleRecordedIterationEqualsDirectWarp) {
  const int w = 64, h = 48;
  const Image img = random_texture(w, h, 1, 9);
  const ControlLayout layout = uniform_layout(3, 4, w, h);
  std::vector<Point2> moved(layout.points.points().begin(), layout.points.points().end());
  for (std::size_t i = 0; i < moved.size(); ++i) moved[i].x += (i % 3) - 1.0;
  const ControlPointSet recorded(moved, w, h);

  const auto dir = scratch_dir("file_predictor");
  write_points(dir / "iter_0.json", recorded);
  auto pred = make_predictor(PredictorSpec::from_directory(dir));
  const CoupledResult r = run_coupled(img, layout, *pred, {1});

  const Image direct = iterative_warp_step(img, solve_tps(layout.points, recorded));
  EXPECT_EQ(r.image, direct);

  auto again = make_predictor(PredictorSpec::from_directory(dir));
  EXPECT_THROW(run_coupled(img, layout, *again, {2}), PredictorFailure);
}

TEST(RunCoupled, FilePredictorRejectsWrongCounts) {
  const auto dir = scratch_dir("file_predictor_count");
  write_points(dir / "iter_0.json", uniform_layout(2, 2, 32, 32).points);
  auto pred = make_predictor(PredictorSpec::from_directory(dir));
  EXPECT_THROW(run_coupled(Image(32, 32, 1), uniform_layout(3, 3, 32, 32), *pred, {1}), PredictorFailure);
}

TEST(RunCoupled, PredictorSeesTheCoupledImage) {
  const int w = 40, h = 30;
  const Image img = random_texture(w, h, 1, 4);
  RecordingPredictor pred;
  const CoupledResult r = run_coupled(img, uniform_layout(3, 3, w, h), pred, {3});
  ASSERT_EQ(pred.seen.size(), 3u);
  EXPECT_EQ(pred.seen[0], img);
  // The view at iteration 2 is the input warped once by the coupled flow F_2.
  FlowField f2 = compose_flows(r.delta_flows[0], r.delta_flows[1]);
  EXPECT_EQ(pred.seen[2], backward_warp(img, f2));
}

TEST(RunCoupled, CoupledRegimeInterpolatesOnce) {
  const Image img = checkerboard(96, 64, 4, 5.0);
  const ControlLayout layout = uniform_layout(4, 4, 96, 64);
  for (int iters : {1, 2, 4}) {
    auto pred = make_predictor(PredictorSpec::rotation_oracle(5.0, 0.5));
    const auto before = backward_warp_calls();
    const CoupledResult r = run_coupled(img, layout, *pred, {iters});
    EXPECT_EQ(backward_warp_calls() - before, 1u);
    EXPECT_EQ(r.interpolation_depth, 1);
    EXPECT_EQ(r.image, backward_warp(img, r.flow));

    auto pred2 = make_predictor(PredictorSpec::rotation_oracle(5.0, 0.5));
    const Image ref = checkerboard(96, 64, 4, 0.0);
    const auto before_cmp = backward_warp_calls();
    const CouplingComparison cmp = compare_coupling_modes(img, layout, *pred2, {iters, &ref});
    // Intermediate renders for the per-iteration metrics plus one warp per
    // iterative step.
    EXPECT_EQ(backward_warp_calls() - before_cmp, static_cast<std::uint64_t>(2 * iters));
    EXPECT_EQ(cmp.iterative_interpolation_depth, iters);
  }
}

TEST(CompareCouplingModes, SingleIterationIsBitIdentical) {
  const Image img = checkerboard(80, 60, 4, 3.0);
  const Image ref = checkerboard(80, 60, 4, 0.0);
  auto pred = make_predictor(PredictorSpec::rotation_oracle(3.0, 1.0));
  const CouplingComparison cmp = compare_coupling_modes(img, uniform_layout(3, 4, 80, 60), *pred, {1, &ref});
  EXPECT_EQ(cmp.coupled.image, cmp.iterative_image);
  EXPECT_EQ(cmp.coupled_metrics.psnr, cmp.iterative_metrics.psnr);
}

TEST(CompareCouplingModes, IntegerTranslationsAgreeWhereInBounds) {
  const int w = 50, h = 40;
  const Image img = random_texture(w, h, 3, 13);
  TranslationPredictor pred({{2, 1}, {-1, 3}, {3, -2}});
  const CouplingComparison cmp = compare_coupling_modes(img, uniform_layout(3, 3, w, h), pred, {3, &img});
  // Total shift (4, 2); every chained position is inside for this band.
  for (int y = 3; y < h - 6; ++y)
    for (int x = 2; x < w - 6; ++x)
      for (int c = 0; c < 3; ++c) {
        EXPECT_NEAR(cmp.coupled.image.at(x, y, c), cmp.iterative_image.at(x, y, c), 1e-9);
        EXPECT_NEAR(cmp.coupled.image.at(x, y, c), img.at(x + 4, y + 2, c), 1e-9);
      }
}

TEST(CompareCouplingModes, CouplingAvoidsAccumulatedBlur) {
  const int w = 128, h = 96;
  const Image tilted = checkerboard(w, h, 4, 8.0);
  const Image truth = checkerboard(w, h, 4, 0.0);
  auto pred = make_predictor(PredictorSpec::rotation_steps({3.0, 3.0, 2.0}));
  const CouplingComparison cmp =
      compare_coupling_modes(tilted, uniform_layout(4, 5, w, h), *pred, {3, &truth, 0.6});
  EXPECT_GT(cmp.coupled_metrics.psnr, cmp.iterative_metrics.psnr);
  EXPECT_GT(cmp.coupled_metrics.ssim, cmp.iterative_metrics.ssim);
  EXPECT_THROW(compare_coupling_modes(tilted, uniform_layout(4, 5, w, h), *pred, {3}), InvalidArgument);
}

TEST(PredictorSpec, Parsing) {
  EXPECT_EQ(parse_predictor_spec("identity").kind, PredictorKind::identity);
  const auto oracle = parse_predictor_spec("rotation-oracle:angle=8,gain=0.5");
  EXPECT_EQ(oracle.kind, PredictorKind::rotation_oracle);
  EXPECT_EQ(oracle.initial_angle, 8.0);
  EXPECT_EQ(oracle.gain, 0.5);
  const auto steps = parse_predictor_spec("rotation-oracle:steps=3/3/2");
  EXPECT_EQ(steps.steps, (std::vector<double>{3, 3, 2}));
  EXPECT_EQ(make_predictor(steps)->nominal_tilt(), 8.0);
  EXPECT_EQ(parse_predictor_spec("file:/tmp/x").directory, "/tmp/x");

  EXPECT_THROW(parse_predictor_spec("rotation-oracle:angle=8,gain=0"), InvalidArgument);
  EXPECT_THROW(parse_predictor_spec("rotation-oracle:angle=8,gain=1.5"), InvalidArgument);
  EXPECT_THROW(parse_predictor_spec("rotation-oracle:gain=0.5"), InvalidArgument);
  EXPECT_THROW(parse_predictor_spec("rotation-oracle:angle=x"), InvalidArgument);
  EXPECT_THROW(parse_predictor_spec("neural"), InvalidArgument);
  EXPECT_THROW(parse_predictor_spec("file:"), InvalidArgument);
}
