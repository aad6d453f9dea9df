#pragma once

#include <string>

#include "axarith/netlist.hpp"

namespace axarith {

// Structural Verilog-2001 restricted to module/input/output/wire
// declarations, and/or/xor/not/buf primitive instances, and
// `assign net = 1'b0;` / `assign net = 1'b1;` for constants. Ports keep
// their circuit names (outputs listed first), internal nets are n<k>,
// instances g<i>. Emission is byte-deterministic for a given circuit and
// module name.
std::string emit_verilog(const Circuit& circuit, const std::string& module_name);

// Parses text produced by emit_verilog (or hand-written text in the same
// subset) back into a Circuit. Unsupported constructs, undeclared nets,
// arity mismatches and redriven nets raise std::runtime_error with the
// 1-based line number of the offending token.
Circuit reimport_verilog(const std::string& text);

}  // namespace axarith
