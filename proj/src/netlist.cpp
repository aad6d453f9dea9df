#include "axarith/netlist.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace axarith {

int gate_arity(GateKind kind) {
    switch (kind) {
        case GateKind::AND2:
        case GateKind::OR2:
        case GateKind::XOR2:
            return 2;
        case GateKind::NOT1:
        case GateKind::BUF1:
            return 1;
        case GateKind::CONST0:
        case GateKind::CONST1:
            return 0;
    }
    throw std::invalid_argument("unknown gate kind");
}

const char* gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::AND2: return "AND2";
        case GateKind::OR2: return "OR2";
        case GateKind::XOR2: return "XOR2";
        case GateKind::NOT1: return "NOT1";
        case GateKind::BUF1: return "BUF1";
        case GateKind::CONST0: return "CONST0";
        case GateKind::CONST1: return "CONST1";
    }
    throw std::invalid_argument("unknown gate kind");
}

namespace {

constexpr std::uint32_t kNoDriver = 0xffffffffu;

// Per-net driving gate (kNoDriver for input-driven or undriven nets), plus a
// flag for nets driven by input ports. Shared by validate() and the topo sort.
struct DriverMap {
    std::vector<std::uint32_t> gate_of;
    std::vector<std::uint8_t> from_input;

    explicit DriverMap(const Circuit& c)
        : gate_of(c.net_count, kNoDriver), from_input(c.net_count, 0) {
        for (const Port& p : c.inputs)
            if (p.net < c.net_count) from_input[p.net] = 1;
        for (std::uint32_t i = 0; i < c.gates.size(); ++i)
            if (c.gates[i].out < c.net_count && gate_of[c.gates[i].out] == kNoDriver)
                gate_of[c.gates[i].out] = i;
    }

    bool driven(NetId n) const { return from_input[n] || gate_of[n] != kNoDriver; }
};

// Kahn's algorithm over gate-to-gate dependencies. Returns false if a cycle
// keeps some gates unordered.
bool topo_order(const Circuit& c, const DriverMap& drivers, std::vector<std::uint32_t>& order) {
    const std::size_t n = c.gates.size();
    std::vector<std::uint32_t> indegree(n, 0);
    std::vector<std::vector<std::uint32_t>> consumers(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        const Gate& g = c.gates[i];
        const int arity = gate_arity(g.kind);
        const NetId ins[2] = {g.a, g.b};
        for (int k = 0; k < arity; ++k) {
            if (ins[k] >= c.net_count) return false;
            std::uint32_t d = drivers.gate_of[ins[k]];
            if (d != kNoDriver) {
                consumers[d].push_back(i);
                ++indegree[i];
            }
        }
    }
    order.clear();
    order.reserve(n);
    std::vector<std::uint32_t> ready;
    for (std::uint32_t i = 0; i < n; ++i)
        if (indegree[i] == 0) ready.push_back(i);
    while (!ready.empty()) {
        std::uint32_t g = ready.back();
        ready.pop_back();
        order.push_back(g);
        for (std::uint32_t next : consumers[g])
            if (--indegree[next] == 0) ready.push_back(next);
    }
    return order.size() == n;
}

bool eval_gate(const Gate& g, const std::vector<std::uint8_t>& v) {
    switch (g.kind) {
        case GateKind::AND2: return v[g.a] && v[g.b];
        case GateKind::OR2: return v[g.a] || v[g.b];
        case GateKind::XOR2: return v[g.a] != v[g.b];
        case GateKind::NOT1: return !v[g.a];
        case GateKind::BUF1: return v[g.a] != 0;
        case GateKind::CONST0: return false;
        case GateKind::CONST1: return true;
    }
    return false;
}

}  // namespace

std::vector<std::string> validate(const Circuit& c) {
    std::vector<std::string> problems;
    auto report = [&problems](const std::string& msg) { problems.push_back(msg); };

    std::vector<int> driver_count(c.net_count, 0);
    std::set<std::string> names;
    for (const Port& p : c.inputs) {
        if (!names.insert(p.name).second)
            report("duplicate port name '" + p.name + "'");
        if (p.net >= c.net_count) {
            report("input '" + p.name + "' uses out-of-range net " + std::to_string(p.net));
            continue;
        }
        ++driver_count[p.net];
    }
    for (const Port& p : c.outputs) {
        if (!names.insert(p.name).second)
            report("duplicate port name '" + p.name + "'");
        if (p.net >= c.net_count)
            report("output '" + p.name + "' uses out-of-range net " + std::to_string(p.net));
    }

    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const Gate& g = c.gates[i];
        const std::string where = "gate " + std::to_string(i) + " (" + gate_name(g.kind) + ")";
        if (g.out >= c.net_count)
            report(where + " drives out-of-range net " + std::to_string(g.out));
        else
            ++driver_count[g.out];
        const int arity = gate_arity(g.kind);
        const NetId ins[2] = {g.a, g.b};
        for (int k = 0; k < arity; ++k)
            if (ins[k] >= c.net_count)
                report(where + " reads out-of-range net " + std::to_string(ins[k]));
    }

    for (NetId n = 0; n < c.net_count; ++n)
        if (driver_count[n] > 1)
            report("net " + std::to_string(n) + " has " + std::to_string(driver_count[n]) +
                   " drivers");

    DriverMap drivers(c);
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const Gate& g = c.gates[i];
        const int arity = gate_arity(g.kind);
        const NetId ins[2] = {g.a, g.b};
        for (int k = 0; k < arity; ++k)
            if (ins[k] < c.net_count && !drivers.driven(ins[k]))
                report("gate " + std::to_string(i) + " reads undriven net " +
                       std::to_string(ins[k]));
    }
    for (const Port& p : c.outputs)
        if (p.net < c.net_count && !drivers.driven(p.net))
            report("output '" + p.name + "' reads undriven net " + std::to_string(p.net));

    if (problems.empty()) {
        std::vector<std::uint32_t> order;
        if (!topo_order(c, drivers, order))
            report("combinational cycle detected");
    }
    return problems;
}

std::size_t GateStats::count(GateKind kind) const {
    auto it = counts.find(kind);
    return it == counts.end() ? 0 : it->second;
}

GateStats gate_stats(const Circuit& c) {
    GateStats s;
    for (const Gate& g : c.gates) ++s.counts[g.kind];
    s.total = c.gates.size();
    return s;
}

Evaluator::Evaluator(Circuit c) : circuit_(std::move(c)) {
    std::vector<std::string> problems = validate(circuit_);
    if (!problems.empty()) {
        std::ostringstream msg;
        msg << "invalid circuit:";
        for (const std::string& p : problems) msg << "\n  " << p;
        throw std::invalid_argument(msg.str());
    }
    DriverMap drivers(circuit_);
    topo_order(circuit_, drivers, order_);
}

std::vector<std::uint8_t> Evaluator::make_scratch() const {
    return std::vector<std::uint8_t>(circuit_.net_count, 0);
}

void Evaluator::run(std::vector<std::uint8_t>& scratch) const {
    if (scratch.size() != circuit_.net_count)
        throw std::invalid_argument("scratch size does not match net count");
    for (std::uint32_t gi : order_) {
        const Gate& g = circuit_.gates[gi];
        scratch[g.out] = eval_gate(g, scratch) ? 1 : 0;
    }
}

Assignment Evaluator::evaluate(const Assignment& in) const {
    std::vector<std::uint8_t> scratch = make_scratch();
    std::size_t used = 0;
    for (const Port& p : circuit_.inputs) {
        auto it = in.find(p.name);
        if (it == in.end())
            throw std::invalid_argument("missing value for input '" + p.name + "'");
        scratch[p.net] = it->second ? 1 : 0;
        ++used;
    }
    if (used != in.size())
        for (const auto& [name, value] : in) {
            (void)value;
            bool known = std::any_of(circuit_.inputs.begin(), circuit_.inputs.end(),
                                     [&name](const Port& p) { return p.name == name; });
            if (!known) throw std::invalid_argument("unknown input '" + name + "'");
        }
    run(scratch);
    Assignment out;
    for (const Port& p : circuit_.outputs) out[p.name] = scratch[p.net] != 0;
    return out;
}

Assignment evaluate(const Circuit& c, const Assignment& in) {
    return Evaluator(c).evaluate(in);
}

NetId CircuitBuilder::add_net() {
    NetId id = static_cast<NetId>(c_.net_count);
    ++c_.net_count;
    return id;
}

void CircuitBuilder::check_net(NetId n) const {
    if (n >= c_.net_count)
        throw std::invalid_argument("unknown net " + std::to_string(n));
}

NetId CircuitBuilder::add_input(const std::string& name) {
    if (!port_names_.insert(name).second)
        throw std::invalid_argument("duplicate port name '" + name + "'");
    NetId net = add_net();
    c_.inputs.push_back({name, net});
    return net;
}

void CircuitBuilder::mark_output(const std::string& name, NetId net) {
    check_net(net);
    if (!port_names_.insert(name).second)
        throw std::invalid_argument("duplicate port name '" + name + "'");
    c_.outputs.push_back({name, net});
}

NetId CircuitBuilder::add_gate(GateKind kind, NetId a, NetId b) {
    const int arity = gate_arity(kind);
    if (arity >= 1) check_net(a);
    if (arity >= 2) check_net(b);
    NetId out = add_net();
    c_.gates.push_back({kind, out, arity >= 1 ? a : 0, arity >= 2 ? b : 0});
    return out;
}

NetId CircuitBuilder::const0() {
    if (!has_const0_) {
        const0_net_ = add_gate(GateKind::CONST0);
        has_const0_ = true;
    }
    return const0_net_;
}

NetId CircuitBuilder::const1() {
    if (!has_const1_) {
        const1_net_ = add_gate(GateKind::CONST1);
        has_const1_ = true;
    }
    return const1_net_;
}

std::map<std::string, NetId> CircuitBuilder::instantiate(
    const Circuit& child, const std::map<std::string, NetId>& bindings) {
    for (const auto& [name, net] : bindings) {
        check_net(net);
        bool known = std::any_of(child.inputs.begin(), child.inputs.end(),
                                 [&name](const Port& p) { return p.name == name; });
        if (!known)
            throw std::invalid_argument("binding '" + name + "' matches no child input");
    }

    std::vector<NetId> net_map(child.net_count, 0);
    std::vector<std::uint8_t> mapped(child.net_count, 0);
    for (const Port& p : child.inputs) {
        auto it = bindings.find(p.name);
        if (it == bindings.end())
            throw std::invalid_argument("child input '" + p.name + "' is unbound");
        net_map[p.net] = it->second;
        mapped[p.net] = 1;
    }
    for (const Gate& g : child.gates) {
        if (g.out >= child.net_count || mapped[g.out])
            throw std::invalid_argument("child circuit is malformed");
        net_map[g.out] = add_net();
        mapped[g.out] = 1;
    }
    for (const Gate& g : child.gates) {
        Gate copy = g;
        copy.out = net_map[g.out];
        const int arity = gate_arity(g.kind);
        const NetId ins[2] = {g.a, g.b};
        NetId mapped_ins[2] = {0, 0};
        for (int k = 0; k < arity; ++k) {
            if (ins[k] >= child.net_count || !mapped[ins[k]])
                throw std::invalid_argument("child circuit reads an undriven net");
            mapped_ins[k] = net_map[ins[k]];
        }
        copy.a = mapped_ins[0];
        copy.b = mapped_ins[1];
        c_.gates.push_back(copy);
    }

    std::map<std::string, NetId> outs;
    for (const Port& p : child.outputs) {
        if (p.net >= child.net_count || !mapped[p.net])
            throw std::invalid_argument("child output '" + p.name + "' is undriven");
        outs[p.name] = net_map[p.net];
    }
    return outs;
}

Circuit CircuitBuilder::build() {
    Circuit out = std::move(c_);
    c_ = Circuit{};
    port_names_.clear();
    has_const0_ = has_const1_ = false;
    return out;
}

}  // namespace axarith
