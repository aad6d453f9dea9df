#pragma once

#include "axarith/netlist.hpp"

namespace axarith {

// Exact full adder, inputs A,B,Cin -> Sum,Cout.
// Sum = (A xor B) xor Cin, Cout = (A and B) or (Cin and (A xor B)).
Circuit build_exact_fa();

// Approximate full adder, inputs A,B,Cin -> Sum,Cout.
// Sum = A or Cin, Cout = B. Over the 8 input rows this cell gets Sum wrong 4
// times and Cout wrong twice; the value error Cout:Sum - (A+B+Cin) is always
// in {-1, 0, +1}.
Circuit build_approx_fa();

// Half adder, inputs A,B -> Sum,Cout.
Circuit build_half_adder();

// k:3 population-count counter for k in 4..7, inputs X0..X{k-1} ->
// S0,S1,S2 with S2:S1:S0 = number of ones. Built from exact FA/HA cells.
Circuit build_counter(int k);

}  // namespace axarith
