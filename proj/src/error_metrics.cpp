#include "axarith/error_metrics.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "axarith/parallel.hpp"

namespace axarith {

namespace {

// Streaming accumulator kept in integers (and a 64.64 fixed-point sum for the
// relative error) so partial results merge without rounding; partitioning the
// case space therefore cannot change the totals.
struct Accum {
    std::uint64_t cases = 0;
    std::uint64_t errors = 0;
    std::uint64_t sum_ed = 0;
    std::uint64_t max_ed = 0;
    std::uint64_t excluded = 0;
    unsigned __int128 rel_q64 = 0;  // sum of (ed << 64) / exact
    std::map<std::uint64_t, std::uint64_t> hist;

    void add(std::uint64_t exact, std::uint64_t approx) {
        const std::uint64_t ed = exact > approx ? exact - approx : approx - exact;
        ++cases;
        ++hist[ed];
        if (ed) {
            ++errors;
            sum_ed += ed;
            if (ed > max_ed) max_ed = ed;
        }
        if (exact == 0)
            ++excluded;
        else
            rel_q64 += (static_cast<unsigned __int128>(ed) << 64) / exact;
    }

    void merge(const Accum& o) {
        cases += o.cases;
        errors += o.errors;
        sum_ed += o.sum_ed;
        max_ed = std::max(max_ed, o.max_ed);
        excluded += o.excluded;
        rel_q64 += o.rel_q64;
        for (const auto& [ed, n] : o.hist) hist[ed] += n;
    }

    ErrorReport finish(std::string label, std::uint64_t max_exact) const {
        ErrorReport r;
        r.label = std::move(label);
        r.total_cases = cases;
        r.error_cases = errors;
        r.error_rate = cases ? double(errors) / double(cases) : 0.0;
        r.max_ed = max_ed;
        r.sum_abs_ed = sum_ed;
        r.med = cases ? double(sum_ed) / double(cases) : 0.0;
        const std::uint64_t included = cases - excluded;
        constexpr long double kOne = 18446744073709551616.0L;  // 2^64
        r.mred = included
                     ? double(static_cast<long double>(rel_q64) / kOne / double(included))
                     : 0.0;
        r.nmed = max_exact ? r.med / double(max_exact) : 0.0;
        r.mred_excluded = excluded;
        r.histogram = hist;
        return r;
    }
};

const char* variant_label(const MultiplierVariant& v) {
    switch (v.kind) {
        case MultiplierKind::EXACT_REFERENCE: return "mult:exact";
        case MultiplierKind::PROPOSED_APPROX: return "mult:proposed";
        case MultiplierKind::CUSTOM: return "mult:custom";
    }
    return "mult:?";
}

// Merges per-slice accumulators in slice order; slice boundaries depend only
// on the worker count and every accumulator field is exact, so any worker
// count produces the identical report.
template <typename Work>
Accum run_slices(std::uint64_t space, int threads, const Work& work) {
    const int t = effective_threads(threads);
    const int slices = static_cast<int>(std::min<std::uint64_t>(t, space ? space : 1));
    if (slices == 1) {  // plain serial loop, no parallel region
        Accum acc;
        work(0, space, acc);
        return acc;
    }
    std::vector<Accum> parts(slices);
#ifdef _OPENMP
#pragma omp parallel for schedule(static, 1) num_threads(slices)
#endif
    for (int s = 0; s < slices; ++s) {
        const std::uint64_t lo = space * s / slices;
        const std::uint64_t hi = space * (s + 1) / slices;
        work(lo, hi, parts[s]);
    }
    Accum total;
    for (const Accum& p : parts) total.merge(p);
    return total;
}

ErrorReport analyze_multiplier_impl(const MultiplierVariant& v, int threads) {
    const Multiplier m(v);
    const int w = m.width();
    const std::uint64_t n = 1ull << w;
    const std::uint64_t max_exact = (n - 1) * (n - 1);

    Accum total = run_slices(n, threads, [&](std::uint64_t lo, std::uint64_t hi, Accum& acc) {
        std::vector<std::uint8_t> scratch = m.make_scratch();
        for (std::uint64_t a = lo; a < hi; ++a)
            for (std::uint64_t b = 0; b < n; ++b) {
                const std::uint64_t approx =
                    m.multiply(std::uint32_t(a), std::uint32_t(b), scratch);
                acc.add(a * b, approx);
            }
    });
    return total.finish(variant_label(v), max_exact);
}

ErrorReport analyze_adder_impl(const AdderConfig& cfg, int threads) {
    if (!valid(cfg))
        throw std::invalid_argument("bad adder config: width " + std::to_string(cfg.width) +
                                    ", nab " + std::to_string(cfg.nab));
    if (cfg.width > 12)
        throw std::invalid_argument("adder analysis width capped at 12, got " +
                                    std::to_string(cfg.width));
    const Circuit rca = build_rca(cfg);
    const Evaluator eval(rca);
    const int w = cfg.width;
    const std::uint64_t n = 1ull << w;
    const std::uint64_t max_exact = 2 * (n - 1) + 1;

    std::vector<NetId> xn(w), yn(w), sn(w);
    NetId cin_net = 0, cout_net = 0;
    for (const Port& p : rca.inputs) {
        if (p.name == "Cin") cin_net = p.net;
        for (int i = 0; i < w; ++i) {
            if (p.name == "X" + std::to_string(i)) xn[i] = p.net;
            if (p.name == "Y" + std::to_string(i)) yn[i] = p.net;
        }
    }
    for (const Port& p : rca.outputs) {
        if (p.name == "Cout") cout_net = p.net;
        for (int i = 0; i < w; ++i)
            if (p.name == "S" + std::to_string(i)) sn[i] = p.net;
    }

    Accum total = run_slices(n, threads, [&](std::uint64_t lo, std::uint64_t hi, Accum& acc) {
        std::vector<std::uint8_t> scratch = eval.make_scratch();
        for (std::uint64_t x = lo; x < hi; ++x)
            for (std::uint64_t y = 0; y < n; ++y)
                for (int cin = 0; cin < 2; ++cin) {
                    for (int i = 0; i < w; ++i) {
                        scratch[xn[i]] = (x >> i) & 1;
                        scratch[yn[i]] = (y >> i) & 1;
                    }
                    scratch[cin_net] = std::uint8_t(cin);
                    eval.run(scratch);
                    std::uint64_t s = std::uint64_t(scratch[cout_net]) << w;
                    for (int i = 0; i < w; ++i) s |= std::uint64_t(scratch[sn[i]]) << i;
                    acc.add(x + y + cin, s);
                }
    });
    return total.finish(
        "rca:" + std::to_string(cfg.width) + ":" + std::to_string(cfg.nab), max_exact);
}

}  // namespace

ErrorReport analyze_multiplier(const MultiplierVariant& v, int threads) {
    return analyze_multiplier_impl(v, threads);
}

ErrorReport analyze_multiplier_serial(const MultiplierVariant& v) {
    return analyze_multiplier_impl(v, 1);
}

ErrorReport analyze_adder(const AdderConfig& cfg, int threads) {
    return analyze_adder_impl(cfg, threads);
}

ErrorReport analyze_adder_serial(const AdderConfig& cfg) {
    return analyze_adder_impl(cfg, 1);
}

std::vector<std::pair<int, ErrorReport>> nab_sweep(int width, int threads) {
    std::vector<std::pair<int, ErrorReport>> out;
    for (int nab = 0; nab <= width; ++nab)
        out.emplace_back(nab, analyze_adder(AdderConfig{width, nab}, threads));
    return out;
}

namespace {

nlohmann::json to_json(const ErrorReport& r) {
    nlohmann::json hist = nlohmann::json::object();
    for (const auto& [ed, n] : r.histogram) hist[std::to_string(ed)] = n;
    return nlohmann::json{{"label", r.label},
                          {"total_cases", r.total_cases},
                          {"error_cases", r.error_cases},
                          {"error_rate", r.error_rate},
                          {"max_ed", r.max_ed},
                          {"med", r.med},
                          {"mred", r.mred},
                          {"nmed", r.nmed},
                          {"sum_abs_ed", r.sum_abs_ed},
                          {"mred_excluded", r.mred_excluded},
                          {"histogram", hist}};
}

}  // namespace

void export_report(const std::vector<ErrorReport>& reports, ReportFormat format,
                   std::ostream& out) {
    if (format == ReportFormat::CSV) {
        out << "label,total_cases,error_cases,error_rate,max_ed,med,mred,nmed\n";
        out << std::setprecision(17);
        for (const ErrorReport& r : reports)
            out << r.label << ',' << r.total_cases << ',' << r.error_cases << ','
                << r.error_rate << ',' << r.max_ed << ',' << r.med << ',' << r.mred << ','
                << r.nmed << '\n';
        return;
    }
    nlohmann::json arr = nlohmann::json::array();
    for (const ErrorReport& r : reports) arr.push_back(to_json(r));
    out << arr.dump(2) << '\n';
}

std::vector<ErrorReport> parse_report_json(std::istream& in) {
    nlohmann::json arr;
    try {
        in >> arr;
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("bad report json: ") + e.what());
    }
    if (!arr.is_array()) throw std::runtime_error("bad report json: expected an array");
    std::vector<ErrorReport> out;
    try {
        for (const nlohmann::json& j : arr) {
            ErrorReport r;
            r.label = j.at("label").get<std::string>();
            r.total_cases = j.at("total_cases").get<std::uint64_t>();
            r.error_cases = j.at("error_cases").get<std::uint64_t>();
            r.error_rate = j.at("error_rate").get<double>();
            r.max_ed = j.at("max_ed").get<std::uint64_t>();
            r.med = j.at("med").get<double>();
            r.mred = j.at("mred").get<double>();
            r.nmed = j.at("nmed").get<double>();
            r.sum_abs_ed = j.at("sum_abs_ed").get<std::uint64_t>();
            r.mred_excluded = j.at("mred_excluded").get<std::uint64_t>();
            for (const auto& [key, value] : j.at("histogram").items())
                r.histogram[std::stoull(key)] = value.get<std::uint64_t>();
            out.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("bad report json: ") + e.what());
    }
    return out;
}

}  // namespace axarith
