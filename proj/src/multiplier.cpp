#include "axarith/multiplier.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>
#include <utility>

#include "axarith/cells.hpp"

namespace axarith {

PartialProductMatrix generate_pp(CircuitBuilder& b, int width) {
    if (width < 2 || width > 16)
        throw std::invalid_argument("multiplier width " + std::to_string(width) +
                                    " out of range (2..16)");
    std::vector<NetId> a, y;
    for (int i = 0; i < width; ++i) a.push_back(b.add_input("A" + std::to_string(i)));
    for (int j = 0; j < width; ++j) y.push_back(b.add_input("B" + std::to_string(j)));

    PartialProductMatrix pp;
    pp.width = width;
    pp.columns.assign(std::size_t(2) * width - 1, {});
    for (int j = 0; j < width; ++j)
        for (int i = 0; i < width; ++i)
            pp.columns[std::size_t(i) + j].push_back(b.add_gate(GateKind::AND2, a[i], y[j]));
    return pp;
}

int CompressorOp::consumed() const {
    switch (kind) {
        case CompressorKind::HA: return 2;
        case CompressorKind::FA_EXACT:
        case CompressorKind::FA_APPROX: return 3;
        case CompressorKind::COUNTER: return counter_size;
    }
    return 0;
}

PlanCensus census(const std::vector<CompressorOp>& stage) {
    PlanCensus c;
    for (const CompressorOp& op : stage) {
        switch (op.kind) {
            case CompressorKind::HA: ++c.ha; break;
            case CompressorKind::FA_EXACT: ++c.fa_exact; break;
            case CompressorKind::FA_APPROX: ++c.fa_approx; break;
            case CompressorKind::COUNTER:
                if (op.counter_size == 4) ++c.c4;
                if (op.counter_size == 5) ++c.c5;
                if (op.counter_size == 6) ++c.c6;
                if (op.counter_size == 7) ++c.c7;
                break;
        }
    }
    return c;
}

PlanCensus census(const ReductionPlan& plan) {
    PlanCensus total;
    for (const auto& stage : plan.stages) {
        PlanCensus c = census(stage);
        total.ha += c.ha;
        total.fa_exact += c.fa_exact;
        total.fa_approx += c.fa_approx;
        total.c4 += c.c4;
        total.c5 += c.c5;
        total.c6 += c.c6;
        total.c7 += c.c7;
    }
    return total;
}

namespace {

// Column heights of the fresh partial-product matrix, padded to 2w columns so
// carries into the top product bit have somewhere to land.
std::vector<int> initial_heights(int width) {
    std::vector<int> h(std::size_t(2) * width, 0);
    for (int c = 0; c < 2 * width - 1; ++c)
        h[c] = std::min({c, width - 1, 2 * width - 2 - c}) + 1;
    return h;
}

// Column heights after one stage; throws if an op overdraws its column.
// Outputs past the last column are dropped.
std::vector<int> apply_stage(const std::vector<int>& heights,
                             const std::vector<CompressorOp>& stage) {
    const int ncols = static_cast<int>(heights.size());
    std::vector<int> rem = heights;
    std::vector<int> add(heights.size(), 0);
    for (const CompressorOp& op : stage) {
        if (op.column < 0 || op.column >= ncols)
            throw std::invalid_argument("op column " + std::to_string(op.column) +
                                        " out of range");
        const int k = op.consumed();
        if (rem[op.column] < k)
            throw std::invalid_argument("plan underflows column " + std::to_string(op.column) +
                                        " (needs " + std::to_string(k) + ", has " +
                                        std::to_string(rem[op.column]) + ")");
        rem[op.column] -= k;
        const int spread = op.kind == CompressorKind::COUNTER ? 3 : 2;
        for (int d = 0; d < spread; ++d)
            if (op.column + d < ncols) ++add[op.column + d];
    }
    std::vector<int> next(heights.size());
    for (int c = 0; c < ncols; ++c) next[c] = rem[c] + add[c];
    return next;
}

// Fixed op budget spent in two sweeps: full adders left to right wherever
// three bits remain, then half adders wherever two remain. The caller's
// budget must fit exactly.
std::vector<CompressorOp> plan_budget_stage(const std::vector<int>& heights, int fa_budget,
                                            int ha_budget) {
    std::vector<int> rem = heights;
    std::vector<CompressorOp> stage;
    for (int c = 0; c < static_cast<int>(rem.size()) && fa_budget > 0; ++c)
        while (rem[c] >= 3 && fa_budget > 0) {
            stage.push_back({CompressorKind::FA_EXACT, c, 0});
            rem[c] -= 3;
            --fa_budget;
        }
    for (int c = 0; c < static_cast<int>(rem.size()) && ha_budget > 0; ++c)
        while (rem[c] >= 2 && ha_budget > 0) {
            stage.push_back({CompressorKind::HA, c, 0});
            rem[c] -= 2;
            --ha_budget;
        }
    if (fa_budget != 0 || ha_budget != 0)
        throw std::invalid_argument("compressor budget does not fit the column heights");
    return stage;
}

// One all-exact cleanup round toward height 2, left to right. For each
// column, n tracks the height the column will have after this stage (unspent
// bits + sums landing here + carries from the column below); ops are placed
// while n exceeds 2 and bits remain to feed them, choosing an HA when that
// exactly settles the column and an FA otherwise.
std::vector<CompressorOp> plan_cleanup_stage(const std::vector<int>& heights) {
    std::vector<CompressorOp> stage;
    std::vector<int> carries(heights.size() + 1, 0);
    for (int c = 0; c < static_cast<int>(heights.size()); ++c) {
        int rem = heights[c];
        int sums = 0;
        while (true) {
            const int n = rem + sums + carries[c];
            if (n <= 2) break;
            if (n == 3 && rem >= 2) {
                stage.push_back({CompressorKind::HA, c, 0});
                rem -= 2;
            } else if (rem >= 3) {
                stage.push_back({CompressorKind::FA_EXACT, c, 0});
                rem -= 3;
            } else if (rem >= 2) {
                stage.push_back({CompressorKind::HA, c, 0});
                rem -= 2;
            } else {
                break;  // the next round gets the leftovers
            }
            ++sums;
            ++carries[c + 1];
        }
    }
    return stage;
}

// First proposed-plan stage: approximate FAs on the two least significant
// columns of height >= 3, then the 7:3/7:3/7:3/6:3/5:3/4:3 counters each on
// the least significant column still tall enough, then two half adders.
std::vector<CompressorOp> plan_opening_stage(const std::vector<int>& heights) {
    std::vector<int> rem = heights;
    std::vector<CompressorOp> stage;
    int afa_left = 2;
    for (int c = 0; c < static_cast<int>(rem.size()) && afa_left > 0; ++c)
        if (rem[c] >= 3) {
            stage.push_back({CompressorKind::FA_APPROX, c, 0});
            rem[c] -= 3;
            --afa_left;
        }
    for (int size : {7, 7, 7, 6, 5, 4}) {
        bool placed = false;
        for (int c = 0; c < static_cast<int>(rem.size()) && !placed; ++c)
            if (rem[c] >= size) {
                stage.push_back({CompressorKind::COUNTER, c, size});
                rem[c] -= size;
                placed = true;
            }
        if (!placed)
            throw std::invalid_argument("no column can feed a " + std::to_string(size) +
                                        ":3 counter");
    }
    int ha_left = 2;
    for (int c = 0; c < static_cast<int>(rem.size()) && ha_left > 0; ++c)
        if (rem[c] >= 2) {
            stage.push_back({CompressorKind::HA, c, 0});
            rem[c] -= 2;
            --ha_left;
        }
    if (afa_left != 0 || ha_left != 0)
        throw std::invalid_argument("opening stage does not fit the column heights");
    return stage;
}

int max_height(const std::vector<int>& heights) {
    return *std::max_element(heights.begin(), heights.end());
}

// Trailing columns handled by the closing adder: from the first column of
// height 2 upward. Everything below must already be a single product bit.
AdderConfig closing_adder(const std::vector<int>& heights) {
    const int ncols = static_cast<int>(heights.size());
    int start = ncols;
    for (int c = 0; c < ncols; ++c)
        if (heights[c] >= 2) {
            start = c;
            break;
        }
    return AdderConfig{ncols - start, 0};
}

void finish_plan(ReductionPlan& plan, std::vector<int> heights) {
    for (int round = 0; max_height(heights) > 2; ++round) {
        if (round > 2 * static_cast<int>(heights.size()))
            throw std::logic_error("column reduction does not converge");
        std::vector<CompressorOp> stage = plan_cleanup_stage(heights);
        heights = apply_stage(heights, stage);
        plan.stages.push_back(std::move(stage));
    }
    plan.final_adder = closing_adder(heights);
}

}  // namespace

ReductionPlan proposed_plan() {
    ReductionPlan plan;
    plan.width = 8;
    std::vector<int> heights = initial_heights(8);

    std::vector<CompressorOp> stage1 = plan_opening_stage(heights);
    heights = apply_stage(heights, stage1);
    plan.stages.push_back(std::move(stage1));

    std::vector<CompressorOp> stage2 = plan_budget_stage(heights, 9, 3);
    heights = apply_stage(heights, stage2);
    plan.stages.push_back(std::move(stage2));

    finish_plan(plan, std::move(heights));
    return plan;
}

ReductionPlan exact_plan(int width) {
    if (width < 2 || width > 16)
        throw std::invalid_argument("multiplier width " + std::to_string(width) +
                                    " out of range (2..16)");
    ReductionPlan plan;
    plan.width = width;
    finish_plan(plan, initial_heights(width));
    return plan;
}

ReductionPlan exactify(ReductionPlan plan) {
    for (auto& stage : plan.stages)
        for (CompressorOp& op : stage)
            if (op.kind == CompressorKind::FA_APPROX) op.kind = CompressorKind::FA_EXACT;
    return plan;
}

MultiplierVariant MultiplierVariant::exact_reference() {
    return {MultiplierKind::EXACT_REFERENCE, nullptr};
}

MultiplierVariant MultiplierVariant::proposed() {
    return {MultiplierKind::PROPOSED_APPROX, nullptr};
}

MultiplierVariant MultiplierVariant::custom(ReductionPlan plan) {
    return {MultiplierKind::CUSTOM, std::make_shared<const ReductionPlan>(std::move(plan))};
}

ReductionPlan resolve_plan(const MultiplierVariant& v) {
    switch (v.kind) {
        case MultiplierKind::EXACT_REFERENCE: return exact_plan(8);
        case MultiplierKind::PROPOSED_APPROX: return proposed_plan();
        case MultiplierKind::CUSTOM:
            if (!v.plan) throw std::invalid_argument("custom variant carries no plan");
            return *v.plan;
    }
    throw std::invalid_argument("unknown multiplier kind");
}

namespace {

struct BuildResult {
    Circuit circuit;
    int width = 0;
    std::vector<NetId> a_nets, b_nets, p_nets;
    std::vector<std::array<NetId, 3>> approx_rows;
};

BuildResult build_impl(const MultiplierVariant& v) {
    const ReductionPlan plan = resolve_plan(v);
    const int w = plan.width;
    const int ncols = 2 * w;

    CircuitBuilder b;
    PartialProductMatrix pp = generate_pp(b, w);

    std::vector<std::deque<NetId>> columns(ncols);
    for (std::size_t c = 0; c < pp.columns.size(); ++c)
        columns[c].assign(pp.columns[c].begin(), pp.columns[c].end());

    const Circuit ha = build_half_adder();
    const Circuit fa = build_exact_fa();
    const Circuit afa = build_approx_fa();
    const Circuit counters[4] = {build_counter(4), build_counter(5), build_counter(6),
                                 build_counter(7)};

    BuildResult out;
    for (std::size_t si = 0; si < plan.stages.size(); ++si) {
        std::vector<std::vector<NetId>> additions(ncols);
        for (const CompressorOp& op : plan.stages[si]) {
            const int c = op.column;
            const int k = op.consumed();
            if (c < 0 || c >= ncols)
                throw std::invalid_argument("stage " + std::to_string(si + 1) +
                                            " places an op on out-of-range column " +
                                            std::to_string(c));
            if (static_cast<int>(columns[c].size()) < k)
                throw std::invalid_argument(
                    "stage " + std::to_string(si + 1) + " underflows column " +
                    std::to_string(c) + " (needs " + std::to_string(k) + ", has " +
                    std::to_string(columns[c].size()) + ")");
            std::vector<NetId> in(columns[c].begin(), columns[c].begin() + k);
            columns[c].erase(columns[c].begin(), columns[c].begin() + k);

            auto route = [&](NetId net, int col) {
                if (col < ncols) additions[col].push_back(net);
            };
            switch (op.kind) {
                case CompressorKind::HA: {
                    auto outs = b.instantiate(ha, {{"A", in[0]}, {"B", in[1]}});
                    route(outs.at("Sum"), c);
                    route(outs.at("Cout"), c + 1);
                    break;
                }
                case CompressorKind::FA_EXACT:
                case CompressorKind::FA_APPROX: {
                    const Circuit& cell = op.kind == CompressorKind::FA_EXACT ? fa : afa;
                    auto outs =
                        b.instantiate(cell, {{"A", in[0]}, {"B", in[1]}, {"Cin", in[2]}});
                    route(outs.at("Sum"), c);
                    route(outs.at("Cout"), c + 1);
                    if (op.kind == CompressorKind::FA_APPROX)
                        out.approx_rows.push_back({in[0], in[1], in[2]});
                    break;
                }
                case CompressorKind::COUNTER: {
                    if (op.counter_size < 4 || op.counter_size > 7)
                        throw std::invalid_argument("counter size " +
                                                    std::to_string(op.counter_size) +
                                                    " out of range (4..7)");
                    std::map<std::string, NetId> bind;
                    for (int i = 0; i < k; ++i) bind["X" + std::to_string(i)] = in[i];
                    auto outs = b.instantiate(counters[op.counter_size - 4], bind);
                    route(outs.at("S0"), c);
                    route(outs.at("S1"), c + 1);
                    route(outs.at("S2"), c + 2);
                    break;
                }
            }
        }
        for (int c = 0; c < ncols; ++c)
            columns[c].insert(columns[c].end(), additions[c].begin(), additions[c].end());
    }

    for (int c = 0; c < ncols; ++c)
        if (columns[c].size() > 2)
            throw std::invalid_argument("column " + std::to_string(c) + " still holds " +
                                        std::to_string(columns[c].size()) +
                                        " bits ahead of the final adder");

    const AdderConfig& fin = plan.final_adder;
    if (!valid(fin) || fin.width > ncols)
        throw std::invalid_argument("bad final adder configuration");
    const int start = ncols - fin.width;
    std::vector<NetId> product(ncols);
    for (int c = 0; c < start; ++c) {
        if (columns[c].size() > 1)
            throw std::invalid_argument("column " + std::to_string(c) +
                                        " below the final adder holds " +
                                        std::to_string(columns[c].size()) + " bits");
        product[c] = columns[c].empty() ? b.const0() : columns[c][0];
    }

    std::map<std::string, NetId> bind;
    for (int i = 0; i < fin.width; ++i) {
        const auto& col = columns[start + i];
        bind["X" + std::to_string(i)] = col.size() > 0 ? col[0] : b.const0();
        bind["Y" + std::to_string(i)] = col.size() > 1 ? col[1] : b.const0();
    }
    bind["Cin"] = b.const0();
    auto sums = b.instantiate(build_rca(fin), bind);
    for (int i = 0; i < fin.width; ++i)
        product[start + i] = sums.at("S" + std::to_string(i));

    for (int c = 0; c < ncols; ++c) b.mark_output("P" + std::to_string(c), product[c]);

    out.circuit = b.build();
    out.width = w;
    for (int i = 0; i < w; ++i) {
        const std::string an = "A" + std::to_string(i);
        const std::string bn = "B" + std::to_string(i);
        for (const Port& p : out.circuit.inputs) {
            if (p.name == an) out.a_nets.push_back(p.net);
            if (p.name == bn) out.b_nets.push_back(p.net);
        }
    }
    for (int c = 0; c < ncols; ++c) out.p_nets.push_back(product[c]);
    return out;
}

}  // namespace

Circuit build_multiplier(const MultiplierVariant& v) {
    return build_impl(v).circuit;
}

Multiplier::Multiplier(const MultiplierVariant& v) {
    BuildResult r = build_impl(v);
    width_ = r.width;
    circuit_ = std::move(r.circuit);
    a_nets_ = std::move(r.a_nets);
    b_nets_ = std::move(r.b_nets);
    p_nets_ = std::move(r.p_nets);
    approx_rows_ = std::move(r.approx_rows);
    eval_ = std::make_unique<Evaluator>(circuit_);
}

std::vector<std::uint8_t> Multiplier::make_scratch() const {
    return eval_->make_scratch();
}

std::uint32_t Multiplier::multiply(std::uint32_t a, std::uint32_t b,
                                   std::vector<std::uint8_t>& scratch) const {
    if (a >> width_ || b >> width_)
        throw std::invalid_argument("operand exceeds multiplier width");
    for (int i = 0; i < width_; ++i) {
        scratch[a_nets_[i]] = (a >> i) & 1;
        scratch[b_nets_[i]] = (b >> i) & 1;
    }
    eval_->run(scratch);
    std::uint32_t p = 0;
    for (int c = 0; c < 2 * width_; ++c)
        p |= std::uint32_t(scratch[p_nets_[c]]) << c;
    return p;
}

std::uint32_t Multiplier::multiply(std::uint32_t a, std::uint32_t b) const {
    std::vector<std::uint8_t> scratch = make_scratch();
    return multiply(a, b, scratch);
}

std::uint32_t multiply(const MultiplierVariant& v, std::uint32_t a, std::uint32_t b) {
    return Multiplier(v).multiply(a, b);
}

}  // namespace axarith
