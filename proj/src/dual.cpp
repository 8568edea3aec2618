#include "ctps/dual.hpp"

#include <cmath>
#include <string>

#include "ctps/errors.hpp"
#include "ctps/flow.hpp"
#include "ctps/tps.hpp"
#include "ctps/warp.hpp"

namespace ctps {
namespace {

void check_pair(const UnlabeledPair& pair) {
  if (!pair.image_a.same_shape(pair.image_b)) throw DimensionMismatch("pair images differ in shape");
  if (pair.points_a.size() != pair.points_b.size()) {
    throw CountMismatch("pair point sets differ in size: " + std::to_string(pair.points_a.size()) + " vs " +
                        std::to_string(pair.points_b.size()));
  }
}

void check_config(const LossConfig& cfg) {
  if (!(cfg.gamma > 0.0 && cfg.gamma <= 1.0)) throw InvalidArgument("gamma must lie in (0, 1]");
  if (cfg.iterations < 1) throw InvalidArgument("loss iteration count must be at least 1");
  if (cfg.margin < 0) throw InvalidArgument("distance margin must be nonnegative");
}

// `receiver` holds the points of the image the output should match.
Image warp_towards(const Image& img, const ControlPointSet& receiver, const ControlPointSet& own) {
  const TpsTransform map = solve_tps(receiver, own);
  return backward_warp(img, tps_to_flow(map, make_grid(img.width(), img.height())));
}

}  // namespace

double patch_distance(const Image& a, const Image& b, DistanceKind kind, int margin) {
  if (!a.same_shape(b)) throw DimensionMismatch("distance between images of different shapes");
  if (margin < 0 || 2 * margin >= a.width() || 2 * margin >= a.height()) {
    throw InvalidArgument("distance margin leaves no pixels");
  }
  double sum = 0.0;
  std::size_t count = 0;
  for (int y = margin; y < a.height() - margin; ++y) {
    for (int x = margin; x < a.width() - margin; ++x) {
      for (int c = 0; c < a.channels(); ++c) {
        const double d = a.at(x, y, c) - b.at(x, y, c);
        sum += kind == DistanceKind::mean_abs ? std::abs(d) : d * d;
        ++count;
      }
    }
  }
  return sum / static_cast<double>(count);
}

std::pair<Image, Image> dual_warp(const UnlabeledPair& pair) {
  check_pair(pair);
  return {warp_towards(pair.image_a, pair.points_b, pair.points_a),
          warp_towards(pair.image_b, pair.points_a, pair.points_b)};
}

double discounted_sum(std::span<const double> distances, double gamma) {
  double total = 0.0;
  double weight = 1.0;
  for (double d : distances) {
    total += weight * d;
    weight *= gamma;
  }
  return total;
}

double labeled_loss(std::span<const Image> outputs, const Image& ground_truth, const LossConfig& cfg) {
  check_config(cfg);
  if (outputs.size() != static_cast<std::size_t>(cfg.iterations)) {
    throw CountMismatch("labeled loss expects " + std::to_string(cfg.iterations) + " outputs, got " +
                        std::to_string(outputs.size()));
  }
  std::vector<double> distances;
  distances.reserve(outputs.size());
  for (const Image& out : outputs) distances.push_back(patch_distance(out, ground_truth, cfg.distance, cfg.margin));
  return discounted_sum(distances, cfg.gamma);
}

double unlabeled_loss(const UnlabeledPair& pair, const LossConfig& cfg) {
  check_config(cfg);
  const auto [to_b, to_a] = dual_warp(pair);
  return patch_distance(to_b, pair.image_b, cfg.distance, cfg.margin) +
         patch_distance(to_a, pair.image_a, cfg.distance, cfg.margin);
}

double total_loss(double labeled, double unlabeled) { return labeled + unlabeled; }

}  // namespace ctps
