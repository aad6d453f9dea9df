#pragma once

#include <cstdint>

#include "axarith/image.hpp"
#include "axarith/multiplier.hpp"

namespace axarith {

// Zero-mean Gaussian noise on the [0,1] intensity scale. The generator is
// pinned for cross-release reproducibility: std::mt19937_64 seeded with
// `seed`, uniforms u = (next() >> 11) * 2^-53, and the trigonometric
// Box-Muller pair z0 = sqrt(-2 ln(1-u1)) cos(2 pi u2),
// z1 = sqrt(-2 ln(1-u1)) sin(2 pi u2), consumed alternately per pixel in
// row-major order. Each pixel becomes clamp(round(v + 255*n), 0, 255) with
// n = z * sqrt(variance).
struct NoiseConfig {
    double variance = 0.0;
    std::uint64_t seed = 0;
};

GrayImage add_gaussian_noise(const GrayImage& img, const NoiseConfig& cfg);

enum class BorderMode { REPLICATE, SKIP };

// 3x3 mean filter. Every window pixel is multiplied by
// mask_weight_numerator through the configured 8x8 multiplier variant (the
// pixel is the first operand, the weight the second), the nine products are
// summed exactly in 32 bits, shifted right by mask_weight_shift and clamped
// to 0..255. The default 28/256 mask approximates the 1/9 kernel weight.
// REPLICATE clamps window coordinates at the borders; SKIP copies border
// pixels through unfiltered and needs at least a 3x3 image.
struct FilterConfig {
    int mask_weight_numerator = 28;
    int mask_weight_shift = 8;
    MultiplierVariant variant = MultiplierVariant::proposed();
    BorderMode border = BorderMode::REPLICATE;
};

GrayImage mean_filter(const GrayImage& img, const FilterConfig& cfg, int threads = 0);
GrayImage mean_filter_serial(const GrayImage& img, const FilterConfig& cfg);

struct QualityReport {
    double psnr_db = 0.0;  // +infinity when mse == 0
    double ssim = 0.0;
    double mse = 0.0;
};

// PSNR = 10 log10(255^2 / MSE); fills psnr_db and mse, leaves ssim 0.
QualityReport psnr(const GrayImage& reference, const GrayImage& test);

// Mean local SSIM over 8x8 windows, stride 1, uniform weighting,
// C1 = (0.01*255)^2, C2 = (0.03*255)^2. Both images must be at least 8x8.
double ssim(const GrayImage& reference, const GrayImage& test);

// psnr() and ssim() combined into one report.
QualityReport assess_quality(const GrayImage& reference, const GrayImage& test);

// noise -> filter, plus the same filter under EXACT_REFERENCE so the
// multiplier-induced degradation can be scored separately from the noise.
struct DenoiseResult {
    GrayImage noisy;
    GrayImage denoised;
    GrayImage exact_path;
    QualityReport quality_vs_original;
    QualityReport quality_vs_exact_path;
};

DenoiseResult denoise_experiment(const GrayImage& img, const NoiseConfig& noise,
                                 const FilterConfig& filter, int threads = 0);

}  // namespace axarith
