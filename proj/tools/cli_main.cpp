#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "axarith/adders.hpp"
#include "axarith/cells.hpp"
#include "axarith/error_metrics.hpp"
#include "axarith/image.hpp"
#include "axarith/multiplier.hpp"
#include "axarith/pipeline.hpp"
#include "axarith/verilog.hpp"

namespace {

// flag combinations CLI11 cannot express; reported with exit code 2
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

axarith::ReportFormat parse_format(const std::string& name) {
    return name == "json" ? axarith::ReportFormat::JSON : axarith::ReportFormat::CSV;
}

void write_reports(const std::vector<axarith::ErrorReport>& reports, const std::string& format,
                   const std::string& out_path) {
    if (out_path.empty()) {
        axarith::export_report(reports, parse_format(format), std::cout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
    axarith::export_report(reports, parse_format(format), out);
    if (!out) throw std::runtime_error("write to '" + out_path + "' failed");
}

void print_histogram(const std::vector<axarith::ErrorReport>& reports) {
    for (const axarith::ErrorReport& r : reports) {
        std::cout << "ed,count\n";
        for (const auto& [ed, n] : r.histogram) std::cout << ed << ',' << n << '\n';
    }
}

axarith::MultiplierVariant parse_variant(const std::string& name) {
    return name == "exact" ? axarith::MultiplierVariant::exact_reference()
                           : axarith::MultiplierVariant::proposed();
}

struct AdderArgs {
    int width = 8;
    int nab = -1;
    bool sweep = false;
    std::string format = "csv";
    std::string out;
};

int run_analyze_adder(const AdderArgs& a) {
    if (a.sweep == (a.nab >= 0))
        throw UsageError("pass exactly one of --nab or --sweep");
    if (!a.sweep && a.nab > a.width)
        throw UsageError("--nab may not exceed --width");
    std::vector<axarith::ErrorReport> reports;
    if (a.sweep) {
        for (auto& [nab, report] : axarith::nab_sweep(a.width)) {
            (void)nab;
            reports.push_back(std::move(report));
        }
    } else {
        reports.push_back(axarith::analyze_adder({a.width, a.nab}));
    }
    write_reports(reports, a.format, a.out);
    return 0;
}

struct MultArgs {
    std::string variant;
    std::string format = "csv";
    std::string out;
    bool histogram = false;
};

int run_analyze_mult(const MultArgs& a) {
    std::vector<axarith::ErrorReport> reports{
        axarith::analyze_multiplier(parse_variant(a.variant))};
    write_reports(reports, a.format, a.out);
    if (a.histogram) print_histogram(reports);
    return 0;
}

struct DenoiseArgs {
    std::string in;
    double variance = 0.0;
    std::uint64_t seed = 0;
    std::string variant;
    std::string out_dir;
};

nlohmann::json quality_json(const axarith::QualityReport& q) {
    nlohmann::json j{{"ssim", q.ssim}, {"mse", q.mse}};
    if (std::isinf(q.psnr_db))
        j["psnr_db"] = "inf";
    else
        j["psnr_db"] = q.psnr_db;
    return j;
}

int run_denoise(const DenoiseArgs& a) {
    const axarith::GrayImage input = axarith::read_pgm(a.in);
    axarith::FilterConfig filter;
    filter.variant = parse_variant(a.variant);
    const axarith::DenoiseResult r =
        axarith::denoise_experiment(input, {a.variance, a.seed}, filter);

    const std::filesystem::path dir(a.out_dir);
    std::filesystem::create_directories(dir);
    axarith::write_pgm(r.noisy, (dir / "noisy.pgm").string());
    axarith::write_pgm(r.denoised, (dir / "denoised.pgm").string());
    axarith::write_pgm(r.exact_path, (dir / "exact_path.pgm").string());

    nlohmann::json q{{"vs_original", quality_json(r.quality_vs_original)},
                     {"vs_exact_path", quality_json(r.quality_vs_exact_path)}};
    std::ofstream out(dir / "quality.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot open quality.json for writing");
    out << q.dump(2) << '\n';
    if (!out) throw std::runtime_error("write to quality.json failed");
    return 0;
}

struct HdlArgs {
    std::string circuit;
    std::string name;
    std::string out;
    bool stats = false;
};

std::string default_module_name(std::string selector) {
    for (char& c : selector)
        if (c == '-' || c == ':') c = '_';
    return selector;
}

axarith::Circuit circuit_from_selector(const std::string& sel) {
    if (sel == "approx-fa") return axarith::build_approx_fa();
    if (sel == "exact-fa") return axarith::build_exact_fa();
    if (sel == "ha") return axarith::build_half_adder();
    if (sel.rfind("counter", 0) == 0) {
        const std::string num = sel.substr(7);
        if (num.size() == 1 && num[0] >= '4' && num[0] <= '7')
            return axarith::build_counter(num[0] - '0');
        throw UsageError("bad circuit selector '" + sel + "' (counters are counter4..counter7)");
    }
    if (sel.rfind("rca:", 0) == 0) {
        int width = 0, nab = 0;
        char colon = 0;
        std::istringstream ss(sel.substr(4));
        if (!(ss >> width >> colon >> nab) || colon != ':' || !ss.eof() || width < 1 ||
            width > 64 || nab < 0 || nab > width)
            throw UsageError("bad circuit selector '" + sel + "' (want rca:W:K, 0 <= K <= W <= 64)");
        return axarith::build_rca({width, nab});
    }
    if (sel == "mult:exact")
        return axarith::build_multiplier(axarith::MultiplierVariant::exact_reference());
    if (sel == "mult:proposed")
        return axarith::build_multiplier(axarith::MultiplierVariant::proposed());
    throw UsageError("bad circuit selector '" + sel + "'");
}

int run_export_hdl(const HdlArgs& a) {
    const axarith::Circuit circuit = circuit_from_selector(a.circuit);
    const std::string name = a.name.empty() ? default_module_name(a.circuit) : a.name;
    const std::string text = axarith::emit_verilog(circuit, name);
    if (a.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(a.out, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open '" + a.out + "' for writing");
        out << text;
        if (!out) throw std::runtime_error("write to '" + a.out + "' failed");
    }
    if (a.stats) {
        const axarith::GateStats stats = axarith::gate_stats(circuit);
        for (const auto& [kind, count] : stats.counts)
            std::cout << "// " << axarith::gate_name(kind) << ' ' << count << '\n';
        std::cout << "// total " << stats.total << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gate-level approximate arithmetic workbench"};
    app.require_subcommand(1);

    AdderArgs adder;
    CLI::App* cmd_adder =
        app.add_subcommand("analyze-adder", "exhaustive ripple-carry adder error analysis");
    cmd_adder->add_option("--width", adder.width, "operand width (exhaustive, <= 12)")
        ->check(CLI::Range(1, 12));
    cmd_adder->add_option("--nab", adder.nab, "number of approximate low bits")
        ->check(CLI::Range(0, 12));
    cmd_adder->add_flag("--sweep", adder.sweep, "analyze every nab from 0 to width");
    cmd_adder->add_option("--format", adder.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd_adder->add_option("--out", adder.out, "write the report here instead of stdout");

    MultArgs mult;
    CLI::App* cmd_mult =
        app.add_subcommand("analyze-mult", "exhaustive 8x8 multiplier error analysis");
    cmd_mult->add_option("--variant", mult.variant, "exact or proposed")
        ->required()
        ->check(CLI::IsMember({"exact", "proposed"}));
    cmd_mult->add_option("--format", mult.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd_mult->add_option("--out", mult.out, "write the report here instead of stdout");
    cmd_mult->add_flag("--histogram", mult.histogram, "also print the ed,count distribution");

    DenoiseArgs den;
    CLI::App* cmd_den =
        app.add_subcommand("denoise", "noise + 3x3 mean filter experiment on a PGM image");
    cmd_den->add_option("--in", den.in, "input PGM image")->required();
    cmd_den->add_option("--variance", den.variance, "gaussian noise variance on [0,1] scale")
        ->required()
        ->check(CLI::NonNegativeNumber);
    cmd_den->add_option("--seed", den.seed, "noise generator seed")->required();
    cmd_den->add_option("--variant", den.variant, "multiplier inside the filter")
        ->required()
        ->check(CLI::IsMember({"exact", "proposed"}));
    cmd_den->add_option("--out-dir", den.out_dir, "directory for the result files")
        ->required();

    HdlArgs hdl;
    CLI::App* cmd_hdl = app.add_subcommand("export-hdl", "emit a circuit as structural Verilog");
    cmd_hdl
        ->add_option("--circuit", hdl.circuit,
                     "approx-fa|exact-fa|ha|counter4..7|rca:W:K|mult:exact|mult:proposed")
        ->required();
    cmd_hdl->add_option("--name", hdl.name, "module name (default: derived from the selector)");
    cmd_hdl->add_option("--out", hdl.out, "write the module here instead of stdout");
    cmd_hdl->add_flag("--stats", hdl.stats, "also print the gate census");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (cmd_adder->parsed()) return run_analyze_adder(adder);
        if (cmd_mult->parsed()) return run_analyze_mult(mult);
        if (cmd_den->parsed()) return run_denoise(den);
        if (cmd_hdl->parsed()) return run_export_hdl(hdl);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
