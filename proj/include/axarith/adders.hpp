#pragma once

#include <cstdint>

#include "axarith/netlist.hpp"

namespace axarith {

// Ripple-carry adder shape: `nab` least significant positions use the
// approximate full adder, the rest are exact.
struct AdderConfig {
    int width = 8;
    int nab = 0;
};

bool valid(const AdderConfig& cfg);

// Inputs X0..X{w-1}, Y0..Y{w-1}, Cin; outputs S0..S{w-1}, Cout. Position i's
// carry out feeds position i+1; position 0 is a full adder driven by Cin.
Circuit build_rca(const AdderConfig& cfg);

// Bit-serial reference model of build_rca in plain arithmetic, independent of
// the netlist evaluator. Returns the value of Cout:S.
std::uint64_t behavioral_add(const AdderConfig& cfg, std::uint64_t x, std::uint64_t y,
                             bool cin);

}  // namespace axarith
