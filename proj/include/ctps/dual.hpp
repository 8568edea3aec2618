#pragma once

#include <span>
#include <utility>

#include "ctps/geometry.hpp"
#include "ctps/image.hpp"

namespace ctps {

/// An unlabeled image, its externally augmented counterpart, and the source
/// points predicted on each (same count, same ordering).
struct UnlabeledPair {
  Image image_a;
  Image image_b;
  ControlPointSet points_a;
  ControlPointSet points_b;
};

enum class DistanceKind { mean_abs, mean_sq };

struct LossConfig {
  double gamma = 0.9;
  int iterations = 1;
  DistanceKind distance = DistanceKind::mean_abs;
  // Pixels ignored along every border when measuring distances.
  int margin = 0;
};

/// Mean absolute or mean squared sample difference, skipping `margin`
/// pixels at each border.
double patch_distance(const Image& a, const Image& b, DistanceKind kind, int margin = 0);

/// Mutual warps: first = image_a sampled through the map points_b -> points_a
/// (the prediction of image_b), second = image_b through points_a -> points_b.
std::pair<Image, Image> dual_warp(const UnlabeledPair& pair);

/// sum_{t=0}^{T-1} gamma^t d_t.
double discounted_sum(std::span<const double> distances, double gamma);

/// Discounted distance of each iteration's output to the ground truth.
double labeled_loss(std::span<const Image> outputs, const Image& ground_truth, const LossConfig& cfg);

/// d(first dual output, image_b) + d(second dual output, image_a).
double unlabeled_loss(const UnlabeledPair& pair, const LossConfig& cfg);

double total_loss(double labeled, double unlabeled);

}  // namespace ctps
