#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "axarith/adders.hpp"
#include "axarith/multiplier.hpp"

namespace axarith {

// Exhaustive error characterization against the exact oracle. ED is the
// absolute difference |exact - approximate|; med averages ED over all cases,
// mred averages ED/exact over the cases with a nonzero exact result
// (mred_excluded counts the skipped ones), nmed divides med by the largest
// exact output. sum_abs_ed keeps the integer numerator of med so downstream
// checks can stay exact.
struct ErrorReport {
    std::string label;
    std::uint64_t total_cases = 0;
    std::uint64_t error_cases = 0;
    double error_rate = 0.0;
    std::uint64_t max_ed = 0;
    double med = 0.0;
    double mred = 0.0;
    double nmed = 0.0;
    std::uint64_t sum_abs_ed = 0;
    std::uint64_t mred_excluded = 0;
    std::map<std::uint64_t, std::uint64_t> histogram;  // |ED| value -> count

    bool operator==(const ErrorReport&) const = default;
};

// All 2^2w operand pairs of the variant's multiplier against a*b.
// threads <= 0 picks the environment default.
ErrorReport analyze_multiplier(const MultiplierVariant& v, int threads = 0);
ErrorReport analyze_multiplier_serial(const MultiplierVariant& v);

// All (x, y, cin) of the built RCA against x+y+cin. Width capped at 12 to
// keep exhaustive enumeration feasible.
ErrorReport analyze_adder(const AdderConfig& cfg, int threads = 0);
ErrorReport analyze_adder_serial(const AdderConfig& cfg);

// Reports for nab = 0..width in order.
std::vector<std::pair<int, ErrorReport>> nab_sweep(int width, int threads = 0);

enum class ReportFormat { CSV, JSON };

// CSV columns: label,total_cases,error_cases,error_rate,max_ed,med,mred,nmed.
// JSON is an array mirroring every ErrorReport field plus the histogram and
// re-parses losslessly via parse_report_json.
void export_report(const std::vector<ErrorReport>& reports, ReportFormat format,
                   std::ostream& out);

std::vector<ErrorReport> parse_report_json(std::istream& in);

}  // namespace axarith
