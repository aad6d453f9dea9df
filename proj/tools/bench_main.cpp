// Timing comparison between the serial reference implementations and the
// OpenMP-parallel kernels. Both paths must produce identical results; any
// divergence fails the run.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "axarith/error_metrics.hpp"
#include "axarith/image.hpp"
#include "axarith/multiplier.hpp"
#include "axarith/parallel.hpp"
#include "axarith/pipeline.hpp"

using namespace axarith;

namespace {

double time_best_of(int rounds, const std::function<void()>& work) {
    double best = 1e300;
    for (int i = 0; i < rounds; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        work();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

struct Row {
    std::string name;
    double serial_ms = 0.0;
    double parallel_ms = 0.0;
    bool identical = false;
};

GrayImage test_image(int w, int h) {
    GrayImage img = GrayImage::filled(w, h, 0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) img.at(x, y) = std::uint8_t((x * 7 + y * 13) & 0xff);
    return img;
}

}  // namespace

int main() {
    const int threads = effective_threads();
    const int rounds = 3;
    std::vector<Row> rows;

    {
        Row r{"analyze_multiplier(proposed), 65536 cases", 0, 0, false};
        ErrorReport serial, parallel;
        r.serial_ms = time_best_of(
            rounds, [&] { serial = analyze_multiplier_serial(MultiplierVariant::proposed()); });
        r.parallel_ms = time_best_of(
            rounds, [&] { parallel = analyze_multiplier(MultiplierVariant::proposed(), threads); });
        r.identical = serial == parallel;
        rows.push_back(r);
    }
    {
        Row r{"analyze_adder(width 10, nab 3), 2097152 cases", 0, 0, false};
        ErrorReport serial, parallel;
        r.serial_ms = time_best_of(rounds, [&] { serial = analyze_adder_serial({10, 3}); });
        r.parallel_ms =
            time_best_of(rounds, [&] { parallel = analyze_adder({10, 3}, threads); });
        r.identical = serial == parallel;
        rows.push_back(r);
    }
    {
        Row r{"mean_filter(proposed), 320x240 image", 0, 0, false};
        const GrayImage img = test_image(320, 240);
        const FilterConfig cfg{};
        GrayImage serial, parallel;
        r.serial_ms = time_best_of(rounds, [&] { serial = mean_filter_serial(img, cfg); });
        r.parallel_ms = time_best_of(rounds, [&] { parallel = mean_filter(img, cfg, threads); });
        r.identical = serial == parallel;
        rows.push_back(r);
    }

    std::printf("%-48s %12s %12s %9s %s\n", "workload", "serial ms", "parallel ms", "speedup",
                "identical");
    bool all_identical = true;
    for (const Row& r : rows) {
        std::printf("%-48s %12.2f %12.2f %8.2fx %s\n", r.name.c_str(), r.serial_ms,
                    r.parallel_ms, r.serial_ms / r.parallel_ms, r.identical ? "yes" : "NO");
        all_identical = all_identical && r.identical;
    }
    std::printf("threads: %d\n", threads);
    if (!all_identical) {
        std::printf("FAILURE: parallel results differ from the serial reference\n");
        return 1;
    }
    return 0;
}
