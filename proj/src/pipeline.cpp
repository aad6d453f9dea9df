#include "axarith/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "axarith/parallel.hpp"

namespace axarith {

GrayImage add_gaussian_noise(const GrayImage& img, const NoiseConfig& cfg) {
    if (cfg.variance < 0.0) throw std::invalid_argument("noise variance must be >= 0");
    const double sigma = std::sqrt(cfg.variance);
    std::mt19937_64 rng(cfg.seed);
    auto uniform = [&rng]() { return double(rng() >> 11) * 0x1.0p-53; };

    GrayImage out = img;
    const double two_pi = 2.0 * std::acos(-1.0);
    bool have_spare = false;
    double spare = 0.0;
    for (std::uint8_t& v : out.data) {
        double z;
        if (have_spare) {
            z = spare;
            have_spare = false;
        } else {
            const double r = std::sqrt(-2.0 * std::log(1.0 - uniform()));
            const double phi = two_pi * uniform();
            z = r * std::cos(phi);
            spare = r * std::sin(phi);
            have_spare = true;
        }
        const long noisy = std::lround(double(v) + 255.0 * sigma * z);
        v = static_cast<std::uint8_t>(std::clamp(noisy, 0l, 255l));
    }
    return out;
}

namespace {

void check_filter(const GrayImage& img, const FilterConfig& cfg) {
    if (cfg.mask_weight_numerator < 0 || cfg.mask_weight_numerator > 255)
        throw std::invalid_argument("mask weight must fit the multiplier's second operand");
    if (cfg.mask_weight_shift < 0 || cfg.mask_weight_shift > 24)
        throw std::invalid_argument("mask shift out of range (0..24)");
    if (cfg.border == BorderMode::SKIP && (img.width < 3 || img.height < 3))
        throw std::invalid_argument("skip borders need at least a 3x3 image");
    if (img.width < 1 || img.height < 1 ||
        img.data.size() != std::size_t(img.width) * img.height)
        throw std::invalid_argument("image dimensions do not match its data");
}

GrayImage filter_impl(const GrayImage& img, const FilterConfig& cfg, int threads) {
    check_filter(img, cfg);
    const Multiplier m(cfg.variant);
    const std::uint32_t weight = std::uint32_t(cfg.mask_weight_numerator);
    GrayImage out = img;

    auto do_row = [&](int y, std::vector<std::uint8_t>& scratch) {
        for (int x = 0; x < img.width; ++x) {
            if (cfg.border == BorderMode::SKIP &&
                (x == 0 || y == 0 || x == img.width - 1 || y == img.height - 1))
                continue;  // border pixels pass through unfiltered
            std::uint32_t acc = 0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    const int sx = std::clamp(x + dx, 0, img.width - 1);
                    const int sy = std::clamp(y + dy, 0, img.height - 1);
                    acc += m.multiply(img.at(sx, sy), weight, scratch);
                }
            const std::uint32_t v = acc >> cfg.mask_weight_shift;
            out.at(x, y) = static_cast<std::uint8_t>(std::min<std::uint32_t>(v, 255));
        }
    };

    const int t = std::min(effective_threads(threads), img.height);
    if (t == 1) {
        std::vector<std::uint8_t> scratch = m.make_scratch();
        for (int y = 0; y < img.height; ++y) do_row(y, scratch);
        return out;
    }
#ifdef _OPENMP
#pragma omp parallel num_threads(t)
    {
        std::vector<std::uint8_t> scratch = m.make_scratch();
#pragma omp for schedule(static)
        for (int y = 0; y < img.height; ++y) do_row(y, scratch);
    }
#else
    std::vector<std::uint8_t> scratch = m.make_scratch();
    for (int y = 0; y < img.height; ++y) do_row(y, scratch);
#endif
    return out;
}

void check_pair(const GrayImage& a, const GrayImage& b) {
    if (a.width != b.width || a.height != b.height)
        throw std::invalid_argument("image sizes differ");
    if (a.data.size() != std::size_t(a.width) * a.height ||
        b.data.size() != std::size_t(b.width) * b.height)
        throw std::invalid_argument("image dimensions do not match its data");
    if (a.width < 1 || a.height < 1) throw std::invalid_argument("empty image");
}

}  // namespace

GrayImage mean_filter(const GrayImage& img, const FilterConfig& cfg, int threads) {
    return filter_impl(img, cfg, threads);
}

GrayImage mean_filter_serial(const GrayImage& img, const FilterConfig& cfg) {
    return filter_impl(img, cfg, 1);
}

QualityReport psnr(const GrayImage& reference, const GrayImage& test) {
    check_pair(reference, test);
    std::uint64_t sq = 0;
    for (std::size_t i = 0; i < reference.data.size(); ++i) {
        const std::int64_t d = std::int64_t(reference.data[i]) - test.data[i];
        sq += std::uint64_t(d * d);
    }
    QualityReport q;
    q.mse = double(sq) / double(reference.data.size());
    q.psnr_db = sq == 0 ? std::numeric_limits<double>::infinity()
                        : 10.0 * std::log10(255.0 * 255.0 / q.mse);
    return q;
}

double ssim(const GrayImage& reference, const GrayImage& test) {
    check_pair(reference, test);
    constexpr int kWin = 8;
    if (reference.width < kWin || reference.height < kWin)
        throw std::invalid_argument("ssim needs at least an 8x8 image");
    constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
    constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);
    constexpr double kN = double(kWin * kWin);

    double total = 0.0;
    std::uint64_t windows = 0;
    for (int y = 0; y + kWin <= reference.height; ++y)
        for (int x = 0; x + kWin <= reference.width; ++x) {
            std::uint64_t sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
            for (int dy = 0; dy < kWin; ++dy)
                for (int dx = 0; dx < kWin; ++dx) {
                    const std::uint64_t a = reference.at(x + dx, y + dy);
                    const std::uint64_t b = test.at(x + dx, y + dy);
                    sx += a;
                    sy += b;
                    sxx += a * a;
                    syy += b * b;
                    sxy += a * b;
                }
            const double mx = double(sx) / kN;
            const double my = double(sy) / kN;
            const double vx = double(sxx) / kN - mx * mx;
            const double vy = double(syy) / kN - my * my;
            const double cov = double(sxy) / kN - mx * my;
            const double num = (2.0 * mx * my + kC1) * (2.0 * cov + kC2);
            const double den = (mx * mx + my * my + kC1) * (vx + vy + kC2);
            total += num / den;
            ++windows;
        }
    return total / double(windows);
}

QualityReport assess_quality(const GrayImage& reference, const GrayImage& test) {
    QualityReport q = psnr(reference, test);
    q.ssim = ssim(reference, test);
    return q;
}

DenoiseResult denoise_experiment(const GrayImage& img, const NoiseConfig& noise,
                                 const FilterConfig& filter, int threads) {
    DenoiseResult r;
    r.noisy = add_gaussian_noise(img, noise);
    r.denoised = mean_filter(r.noisy, filter, threads);
    FilterConfig exact = filter;
    exact.variant = MultiplierVariant::exact_reference();
    r.exact_path = mean_filter(r.noisy, exact, threads);
    r.quality_vs_original = assess_quality(img, r.denoised);
    r.quality_vs_exact_path = assess_quality(r.exact_path, r.denoised);
    return r;
}

}  // namespace axarith
