#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "axarith/adders.hpp"
#include "axarith/netlist.hpp"

namespace axarith {

// Column-wise view of the AND partial products: columns[c] holds the nets of
// all a_i*b_j with i+j = c, in ascending j order. For width w the heights run
// 1,2,..,w,..,2,1 over 2w-1 columns.
struct PartialProductMatrix {
    int width = 0;
    std::vector<std::vector<NetId>> columns;
};

// Adds inputs A0..A{w-1}, B0..B{w-1} and w*w AND2 gates to the builder.
PartialProductMatrix generate_pp(CircuitBuilder& b, int width);

enum class CompressorKind { HA, FA_EXACT, FA_APPROX, COUNTER };

struct CompressorOp {
    CompressorKind kind;
    int column = 0;
    int counter_size = 0;  // 4..7, COUNTER only

    // bits taken from the column: 2 for HA, 3 for FA, counter_size otherwise
    int consumed() const;
};

// Staged column reduction followed by a closing ripple-carry adder. Within a
// stage, ops consume their column's oldest bits in op order; an HA/FA sum
// stays in its column and the carry moves one column up, counter outputs
// S0,S1,S2 land in columns c, c+1, c+2. Surviving bits keep their order and
// stage outputs are appended after them. Anything routed past column 2w-1 is
// discarded (provably zero for all-exact plans). After the last stage every
// column must hold at most 2 bits; the final adder spans the top
// final_adder.width columns and its carry out is dropped.
struct ReductionPlan {
    int width = 8;
    std::vector<std::vector<CompressorOp>> stages;
    AdderConfig final_adder;
};

// Census of compressor ops, comparable against the documented composition.
struct PlanCensus {
    int ha = 0;
    int fa_exact = 0;
    int fa_approx = 0;
    int c4 = 0;
    int c5 = 0;
    int c6 = 0;
    int c7 = 0;

    bool operator==(const PlanCensus&) const = default;
};

PlanCensus census(const std::vector<CompressorOp>& stage);
PlanCensus census(const ReductionPlan& plan);

// The documented deterministic 8x8 placement. Stage 1 holds exactly two
// approximate FAs (on the two least significant columns needing a 3:2
// compression, i.e. columns 2 and 3), one 4:3, one 5:3, one 6:3, three 7:3
// counters (each assigned largest-first to the least significant column it
// fits) and two HAs. Stage 2 holds exactly nine exact FAs and three HAs.
// Later stages are all-exact FA/HA cleanup rounds (carry-aware, target
// height 2); the closing adder is exact.
ReductionPlan proposed_plan();

// All-exact FA/HA staged reduction for any width >= 2; no counters, no
// approximate cells. Used as the exact reference structure.
ReductionPlan exact_plan(int width);

// Same plan with every FA_APPROX replaced by FA_EXACT.
ReductionPlan exactify(ReductionPlan plan);

enum class MultiplierKind { EXACT_REFERENCE, PROPOSED_APPROX, CUSTOM };

struct MultiplierVariant {
    MultiplierKind kind = MultiplierKind::PROPOSED_APPROX;
    std::shared_ptr<const ReductionPlan> plan;  // CUSTOM only

    static MultiplierVariant exact_reference();
    static MultiplierVariant proposed();
    static MultiplierVariant custom(ReductionPlan plan);
};

// Concrete plan behind a variant (EXACT_REFERENCE resolves to exact_plan(8),
// PROPOSED_APPROX to proposed_plan()).
ReductionPlan resolve_plan(const MultiplierVariant& v);

// Inputs A0..A{w-1}, B0..B{w-1}; outputs P0..P{2w-1}. Throws a plan error
// naming the offending column if the plan underflows a column or leaves more
// than two bits ahead of the final adder.
Circuit build_multiplier(const MultiplierVariant& v);

// Built circuit plus evaluation plumbing. One instance may be shared across
// threads when each thread passes its own scratch. Not movable (the embedded
// evaluator refers to the owned circuit).
class Multiplier {
  public:
    explicit Multiplier(const MultiplierVariant& v);
    Multiplier(const Multiplier&) = delete;
    Multiplier& operator=(const Multiplier&) = delete;

    int width() const { return width_; }
    const Circuit& circuit() const { return circuit_; }

    std::vector<std::uint8_t> make_scratch() const;
    std::uint32_t multiply(std::uint32_t a, std::uint32_t b,
                           std::vector<std::uint8_t>& scratch) const;
    std::uint32_t multiply(std::uint32_t a, std::uint32_t b) const;

    // input net triples (A,B,Cin) of every FA_APPROX instance, in build order
    const std::vector<std::array<NetId, 3>>& approx_rows() const { return approx_rows_; }

  private:
    friend Circuit build_multiplier(const MultiplierVariant& v);
    int width_;
    Circuit circuit_;
    std::vector<NetId> a_nets_, b_nets_, p_nets_;
    std::vector<std::array<NetId, 3>> approx_rows_;
    std::unique_ptr<Evaluator> eval_;
};

// Convenience wrapper; builds the circuit on every call. Use Multiplier for
// bulk evaluation.
std::uint32_t multiply(const MultiplierVariant& v, std::uint32_t a, std::uint32_t b);

}  // namespace axarith
