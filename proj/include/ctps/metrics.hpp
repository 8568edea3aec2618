#pragma once

#include "ctps/image.hpp"

namespace ctps {

/// 10 log10(1 / MSE) with peak 1.0; +infinity for identical images.
double psnr(const Image& a, const Image& b);

/// Mean single-scale SSIM over every fully-contained 11x11 Gaussian window
/// (sigma 1.5, K1 0.01, K2 0.03, range 1), averaged over channels.
/// Throws TooSmall when either side is below 11 px.
double ssim(const Image& a, const Image& b);

struct MetricReport {
  double psnr = 0.0;
  double ssim = 0.0;
};

MetricReport measure(const Image& test, const Image& reference);

}  // namespace ctps
