#include "axarith/adders.hpp"

#include <stdexcept>
#include <string>

#include "axarith/cells.hpp"

namespace axarith {

bool valid(const AdderConfig& cfg) {
    return cfg.width >= 1 && cfg.nab >= 0 && cfg.nab <= cfg.width;
}

namespace {

void require_valid(const AdderConfig& cfg) {
    if (!valid(cfg))
        throw std::invalid_argument("bad adder config: width " + std::to_string(cfg.width) +
                                    ", nab " + std::to_string(cfg.nab));
}

}  // namespace

Circuit build_rca(const AdderConfig& cfg) {
    require_valid(cfg);
    const Circuit exact = build_exact_fa();
    const Circuit approx = build_approx_fa();
    CircuitBuilder b;
    std::vector<NetId> x, y;
    for (int i = 0; i < cfg.width; ++i) x.push_back(b.add_input("X" + std::to_string(i)));
    for (int i = 0; i < cfg.width; ++i) y.push_back(b.add_input("Y" + std::to_string(i)));
    NetId carry = b.add_input("Cin");

    std::vector<NetId> s;
    for (int i = 0; i < cfg.width; ++i) {
        const Circuit& cell = i < cfg.nab ? approx : exact;
        auto outs = b.instantiate(cell, {{"A", x[i]}, {"B", y[i]}, {"Cin", carry}});
        s.push_back(outs.at("Sum"));
        carry = outs.at("Cout");
    }
    for (int i = 0; i < cfg.width; ++i) b.mark_output("S" + std::to_string(i), s[i]);
    b.mark_output("Cout", carry);
    return b.build();
}

std::uint64_t behavioral_add(const AdderConfig& cfg, std::uint64_t x, std::uint64_t y,
                             bool cin) {
    require_valid(cfg);
    if (cfg.width < 64 && (x >> cfg.width || y >> cfg.width))
        throw std::invalid_argument("operand exceeds adder width");
    std::uint64_t result = 0;
    bool carry = cin;
    for (int i = 0; i < cfg.width; ++i) {
        const bool a = (x >> i) & 1;
        const bool b = (y >> i) & 1;
        bool sum, cout;
        if (i < cfg.nab) {
            sum = a || carry;
            cout = b;
        } else {
            sum = (a != b) != carry;
            cout = (a && b) || (carry && (a != b));
        }
        result |= std::uint64_t(sum) << i;
        carry = cout;
    }
    result |= std::uint64_t(carry) << cfg.width;
    return result;
}

}  // namespace axarith
