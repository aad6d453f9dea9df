// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// the process exits with the number of failed criteria.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "axarith/adders.hpp"
#include "axarith/cells.hpp"
#include "axarith/error_metrics.hpp"
#include "axarith/image.hpp"
#include "axarith/multiplier.hpp"
#include "axarith/netlist.hpp"
#include "axarith/pipeline.hpp"
#include "axarith/verilog.hpp"

using namespace axarith;

namespace {

struct Outcome {
    bool ok = false;
    std::string detail;
};

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

// --- 1: approximate full adder error profile ------------------------------

Outcome approx_fa_profile() {
    const Evaluator eval(build_approx_fa());
    int sum_errs = 0, cout_errs = 0;
    for (int row = 0; row < 8; ++row) {
        const bool a = row & 1, b = (row >> 1) & 1, cin = (row >> 2) & 1;
        const Assignment out = eval.evaluate({{"A", a}, {"B", b}, {"Cin", cin}});
        const int exact = int(a) + int(b) + int(cin);
        sum_errs += out.at("Sum") != bool(exact & 1);
        cout_errs += out.at("Cout") != bool(exact >> 1);
    }
    const ErrorReport r = analyze_adder({1, 1});
    const bool ok = sum_errs == 4 && cout_errs == 2 && r.max_ed == 1 && r.error_rate == 0.5 &&
                    std::abs(r.nmed - 0.1667) <= 0.001;
    return {ok, "sum errors " + std::to_string(sum_errs) + "/4, cout errors " +
                    std::to_string(cout_errs) + "/2, max ed " + std::to_string(r.max_ed) +
                    ", error rate " + fmt("%g", r.error_rate) + ", nmed " + fmt("%.4f", r.nmed)};
}

// --- 2: exactness oracles --------------------------------------------------

Outcome exactness_oracles() {
    const auto t0 = std::chrono::steady_clock::now();
    const ErrorReport add = analyze_adder({8, 0});
    const ErrorReport mul = analyze_multiplier(MultiplierVariant::exact_reference());
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = add.total_cases == 131072 && add.error_cases == 0 &&
                    mul.total_cases == 65536 && mul.error_cases == 0 && secs < 10.0;
    return {ok, "adder " + std::to_string(add.error_cases) + "/" +
                    std::to_string(add.total_cases) + " errors, multiplier " +
                    std::to_string(mul.error_cases) + "/" + std::to_string(mul.total_cases) +
                    " errors, " + fmt("%.2f", secs) + "s (limit 10s)"};
}

// --- 3: netlist vs behavioral model ----------------------------------------

Outcome netlist_vs_behavioral() {
    const auto t0 = std::chrono::steady_clock::now();
    std::uint64_t cases = 0, mismatches = 0;
    for (int nab = 0; nab <= 4; ++nab) {
        const AdderConfig cfg{4, nab};
        const Evaluator eval(build_rca(cfg));
        std::vector<std::uint8_t> scratch = eval.make_scratch();
        std::vector<NetId> x(4), y(4), s(4);
        NetId cin = 0, cout = 0;
        for (const Port& p : eval.circuit().inputs) {
            if (p.name == "Cin")
                cin = p.net;
            else
                (p.name[0] == 'X' ? x : y)[p.name[1] - '0'] = p.net;
        }
        for (const Port& p : eval.circuit().outputs) {
            if (p.name == "Cout")
                cout = p.net;
            else
                s[p.name[1] - '0'] = p.net;
        }
        for (std::uint32_t m = 0; m < 512; ++m) {
            const std::uint32_t xv = m & 15, yv = (m >> 4) & 15;
            const bool cv = (m >> 8) & 1;
            for (int i = 0; i < 4; ++i) {
                scratch[x[i]] = (xv >> i) & 1;
                scratch[y[i]] = (yv >> i) & 1;
            }
            scratch[cin] = cv;
            eval.run(scratch);
            std::uint64_t got = std::uint64_t(scratch[cout]) << 4;
            for (int i = 0; i < 4; ++i) got |= std::uint64_t(scratch[s[i]]) << i;
            ++cases;
            mismatches += got != behavioral_add(cfg, xv, yv, cv);
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = cases == 5 * 512 && mismatches == 0 && secs < 1.0;
    return {ok, std::to_string(mismatches) + " mismatches over " + std::to_string(cases) +
                    " cases (5 nab values), " + fmt("%.3f", secs) + "s (limit 1s)"};
}

// --- 4: nab monotonicity ----------------------------------------------------

Outcome nab_monotonicity() {
    const auto sweep = nab_sweep(8);
    bool ok = sweep.size() == 9 && sweep.front().second.nmed == 0.0;
    std::string curve;
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        if (i > 0 && sweep[i].second.nmed < sweep[i - 1].second.nmed) ok = false;
        curve += (i ? " " : "") + fmt("%.2e", sweep[i].second.nmed);
    }
    return {ok, "nmed over nab 0..8: " + curve};
}

// --- 5: proposed multiplier accuracy ----------------------------------------

Outcome proposed_accuracy() {
    const auto t0 = std::chrono::steady_clock::now();
    const ErrorReport r = analyze_multiplier(MultiplierVariant::proposed());
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = r.nmed > 0.0 && r.nmed <= 0.01 && secs < 30.0;
    return {ok, "nmed " + fmt("%.3e", r.nmed) + " in (0, 0.01]; med " + fmt("%.4f", r.med) +
                    ", mred " + fmt("%.4e", r.mred) + ", error rate " + fmt("%.6f", r.error_rate) +
                    ", max ed " + std::to_string(r.max_ed) + ", " + fmt("%.2f", secs) +
                    "s (limit 30s)"};
}

// --- 6: reduction plan census -----------------------------------------------

Outcome plan_census() {
    const ReductionPlan plan = proposed_plan();
    bool ok = plan.stages.size() >= 2;
    std::string detail;
    if (ok) {
        const PlanCensus s1 = census(plan.stages[0]);
        const PlanCensus s2 = census(plan.stages[1]);
        const PlanCensus want1{2, 0, 2, 1, 1, 1, 3};
        const PlanCensus want2{3, 9, 0, 0, 0, 0, 0};
        ok = s1 == want1 && s2 == want2;
        detail = "stage 1 {ha " + std::to_string(s1.ha) + ", approx fa " +
                 std::to_string(s1.fa_approx) + ", 4:3 " + std::to_string(s1.c4) + ", 5:3 " +
                 std::to_string(s1.c5) + ", 6:3 " + std::to_string(s1.c6) + ", 7:3 " +
                 std::to_string(s1.c7) + "}, stage 2 {ha " + std::to_string(s2.ha) +
                 ", exact fa " + std::to_string(s2.fa_exact) + "}";
    }

    // replay the documented stage semantics and confirm no column exceeds
    // height 2 when the closing adder takes over
    const int ncols = 2 * plan.width;
    std::vector<int> heights(ncols, 0);
    for (int i = 0; i < plan.width; ++i)
        for (int j = 0; j < plan.width; ++j) ++heights[i + j];
    for (const auto& stage : plan.stages) {
        std::vector<int> taken(ncols, 0), added(ncols, 0);
        for (const CompressorOp& op : stage) {
            taken[op.column] += op.consumed();
            const int arity = op.kind == CompressorKind::COUNTER ? 3 : 2;
            for (int k = 0; k < arity; ++k)
                if (op.column + k < ncols) ++added[op.column + k];
        }
        for (int c = 0; c < ncols; ++c) {
            if (taken[c] > heights[c]) ok = false;
            heights[c] += added[c] - taken[c];
        }
    }
    int tallest = 0;
    for (int h : heights) tallest = std::max(tallest, h);
    if (tallest > 2) ok = false;
    return {ok, detail + "; tallest column before final adder " + std::to_string(tallest)};
}

// --- 7: image pipeline fidelity ---------------------------------------------

Outcome pipeline_fidelity() {
    const auto t0 = std::chrono::steady_clock::now();
    const GrayImage img = read_pgm(std::string(AX_TEST_DATA_DIR) + "/gradient64.pgm");
    const DenoiseResult res = denoise_experiment(img, {0.003, 1}, FilterConfig{});
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    // 48.0 dB is the frozen pre-build oracle threshold for this fixture
    const QualityReport& q = res.quality_vs_exact_path;
    const bool ok = q.psnr_db >= 48.0 && res.quality_vs_exact_path.ssim >= 0.98 && secs < 5.0;
    const std::string p = std::isinf(q.psnr_db) ? "inf" : fmt("%.2f", q.psnr_db);
    return {ok, "vs exact path: psnr " + p + " dB (>= 48.0), ssim " + fmt("%.4f", q.ssim) +
                    " (>= 0.98), " + fmt("%.2f", secs) + "s (limit 5s)"};
}

// --- 8: metric formulas -----------------------------------------------------

Outcome metric_formulas() {
    GrayImage ramp = GrayImage::filled(16, 16, 0);
    for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x) ramp.at(x, y) = std::uint8_t(16 * y + x);

    const double inf_psnr = psnr(ramp, ramp).psnr_db;
    const double zero_psnr =
        psnr(GrayImage::filled(8, 8, 0), GrayImage::filled(8, 8, 255)).psnr_db;
    GrayImage delta = GrayImage::filled(4, 4, 100);
    delta.at(2, 1) = 116;
    const double delta_psnr = psnr(GrayImage::filled(4, 4, 100), delta).psnr_db;
    const double self_ssim = ssim(ramp, ramp);

    const bool ok = std::isinf(inf_psnr) && inf_psnr > 0 && zero_psnr == 0.0 &&
                    std::abs(delta_psnr - 36.09) <= 0.01 && self_ssim == 1.0;
    return {ok, "identical psnr " + std::string(std::isinf(inf_psnr) ? "+inf" : "finite") +
                    ", black-vs-white " + fmt("%g", zero_psnr) + " dB, single-pixel-16 " +
                    fmt("%.4f", delta_psnr) + " dB (36.09 +- 0.01), identical ssim " +
                    fmt("%g", self_ssim)};
}

// --- 9: HDL round trip ------------------------------------------------------

struct IoMap {
    std::vector<NetId> in, out;
};

IoMap io_map(const Circuit& ref, const Circuit& c) {
    IoMap m;
    for (const Port& rp : ref.inputs)
        for (const Port& p : c.inputs)
            if (p.name == rp.name) m.in.push_back(p.net);
    for (const Port& rp : ref.outputs)
        for (const Port& p : c.outputs)
            if (p.name == rp.name) m.out.push_back(p.net);
    return m;
}

bool equivalent(const Circuit& lhs, const Circuit& rhs, std::string& why) {
    if (lhs.inputs.size() != rhs.inputs.size() || lhs.outputs.size() != rhs.outputs.size()) {
        why = "port count changed";
        return false;
    }
    const Evaluator le(lhs), re(rhs);
    const IoMap lm = io_map(lhs, lhs), rm = io_map(lhs, rhs);
    if (rm.in.size() != lhs.inputs.size() || rm.out.size() != lhs.outputs.size()) {
        why = "port names changed";
        return false;
    }
    std::vector<std::uint8_t> ls = le.make_scratch(), rs = re.make_scratch();
    const std::size_t n = lhs.inputs.size();
    const bool exhaustive = n <= 20;
    const std::uint64_t rounds = exhaustive ? (1ull << n) : 10000;
    std::mt19937_64 rng(2026);
    for (std::uint64_t round = 0; round < rounds; ++round) {
        const std::uint64_t m = exhaustive ? round : rng();
        for (std::size_t i = 0; i < n; ++i) ls[lm.in[i]] = rs[rm.in[i]] = (m >> (i % 64)) & 1;
        le.run(ls);
        re.run(rs);
        for (std::size_t i = 0; i < lhs.outputs.size(); ++i)
            if (ls[lm.out[i]] != rs[rm.out[i]]) {
                why = "output '" + lhs.outputs[i].name + "' diverges";
                return false;
            }
    }
    return true;
}

Outcome hdl_round_trip() {
    std::vector<std::pair<std::string, std::function<Circuit()>>> builders = {
        {"ha", [] { return build_half_adder(); }},
        {"exact_fa", [] { return build_exact_fa(); }},
        {"approx_fa", [] { return build_approx_fa(); }},
        {"rca_4_0", [] { return build_rca({4, 0}); }},
        {"rca_8_3", [] { return build_rca({8, 3}); }},
        {"rca_12_6", [] { return build_rca({12, 6}); }},
        {"mult_exact", [] { return build_multiplier(MultiplierVariant::exact_reference()); }},
        {"mult_proposed", [] { return build_multiplier(MultiplierVariant::proposed()); }},
    };
    for (int k = 4; k <= 7; ++k)
        builders.emplace_back("counter" + std::to_string(k), [k] { return build_counter(k); });

    int checked = 0;
    std::uint64_t sampled = 0, exhausted = 0;
    for (const auto& [name, make] : builders) {
        const Circuit c = make();
        const std::string text = emit_verilog(c, name);
        if (text != emit_verilog(make(), name))
            return {false, name + ": emission is not byte-deterministic"};
        std::string why;
        if (!equivalent(c, reimport_verilog(text), why)) return {false, name + ": " + why};
        (c.inputs.size() <= 20 ? exhausted : sampled) += 1;
        ++checked;
    }
    return {true, std::to_string(checked) + " circuits round-tripped (" +
                      std::to_string(exhausted) + " exhaustive, " + std::to_string(sampled) +
                      " with 10000 samples)"};
}

// --- 10: determinism and partition independence -----------------------------

Outcome determinism() {
    const ErrorReport m1 = analyze_multiplier(MultiplierVariant::proposed(), 1);
    const ErrorReport m8 = analyze_multiplier(MultiplierVariant::proposed(), 8);
    const ErrorReport a1 = analyze_adder({8, 3}, 1);
    const ErrorReport a8 = analyze_adder({8, 3}, 8);
    const bool reports_match = m1 == m8 && a1 == a8;

    const GrayImage img = read_pgm(std::string(AX_TEST_DATA_DIR) + "/gradient64.pgm");
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "axarith_acceptance";
    fs::create_directories(dir);
    bool files_match = true;
    std::vector<std::string> first;
    for (int run = 0; run < 2; ++run) {
        const DenoiseResult res = denoise_experiment(img, {0.01, 99}, FilterConfig{}, run + 1);
        const std::vector<const GrayImage*> outs{&res.noisy, &res.denoised, &res.exact_path};
        for (std::size_t i = 0; i < outs.size(); ++i) {
            const fs::path file = dir / ("r" + std::to_string(run) + "_" + std::to_string(i) + ".pgm");
            write_pgm(*outs[i], file.string());
            std::ifstream in(file, std::ios::binary);
            std::ostringstream bytes;
            bytes << in.rdbuf();
            if (run == 0)
                first.push_back(bytes.str());
            else
                files_match = files_match && bytes.str() == first[i];
        }
    }
    const bool ok = reports_match && files_match;
    return {ok, std::string("1-vs-8-worker reports ") +
                    (reports_match ? "identical" : "DIFFER") + ", repeated denoise artifacts " +
                    (files_match ? "byte-identical" : "DIFFER")};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"approximate full adder error profile", approx_fa_profile},
        {"exact adder and exact multiplier oracles", exactness_oracles},
        {"netlist matches behavioral adder model", netlist_vs_behavioral},
        {"nmed is monotone in the approximate bit count", nab_monotonicity},
        {"proposed multiplier accuracy envelope", proposed_accuracy},
        {"reduction plan census and column heights", plan_census},
        {"image pipeline fidelity on the bundled gradient", pipeline_fidelity},
        {"psnr and ssim closed-form landmarks", metric_formulas},
        {"verilog round trip for every builder circuit", hdl_round_trip},
        {"determinism and partition independence", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += !o.ok;
        std::printf("criterion %2zu %s %s: %s\n", i + 1, o.ok ? "PASS" : "FAIL",
                    criteria[i].first, o.detail.c_str());
    }
    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures;
}
