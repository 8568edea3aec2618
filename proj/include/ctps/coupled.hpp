#pragma once

#include <optional>
#include <vector>

#include "ctps/flow.hpp"
#include "ctps/image.hpp"
#include "ctps/layout.hpp"
#include "ctps/metrics.hpp"
#include "ctps/predictor.hpp"

namespace ctps {

struct IterationRecord {
  int iteration = 0;
  ControlPointSet sources;
  FlowStats delta;        // this iteration's TPS flow
  FlowStats accumulated;  // coupled flow after this iteration
  double flow_rotation_deg = 0.0;
  // Predictor's nominal tilt minus flow_rotation_deg, when the tilt is known.
  std::optional<double> residual_rotation_deg;
  std::optional<MetricReport> metrics;
};

using IterationReport = std::vector<IterationRecord>;

struct RunOptions {
  int iterations = 3;
  const Image* reference = nullptr;
  // Metrics are evaluated on the centered crop of this fraction.
  double metric_crop = 1.0;
};

struct CoupledResult {
  FlowField flow;
  Image image;
  IterationReport report;
  std::vector<FlowField> delta_flows;
  // Resampling steps between the input and `image`.
  int interpolation_depth = 0;
};

/// The coupled loop: per iteration, predict sources on the currently warped
/// image, solve the backward map layout -> sources, convert it to a flow and
/// couple it onto the accumulated flow. The output is a single warp of the
/// input by the final flow.
CoupledResult run_coupled(const Image& input, const ControlLayout& layout, Predictor& predictor,
                          const RunOptions& options);

struct CouplingComparison {
  CoupledResult coupled;
  Image iterative_image;
  int iterative_interpolation_depth = 0;
  MetricReport coupled_metrics;
  MetricReport iterative_metrics;
};

/// Runs the coupled loop, then replays the same per-iteration flows by
/// re-warping the previous output each time. Requires options.reference.
CouplingComparison compare_coupling_modes(const Image& input, const ControlLayout& layout,
                                          Predictor& predictor, const RunOptions& options);

/// Least-squares rotation about the frame center best explaining `f`, in
/// degrees, using the rotation_matrix() convention.
double estimate_rotation(const FlowField& f);

}  // namespace ctps
