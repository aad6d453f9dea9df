#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace axarith {

using NetId = std::uint32_t;

enum class GateKind { AND2, OR2, XOR2, NOT1, BUF1, CONST0, CONST1 };

// number of input nets read by a gate of this kind (0, 1 or 2)
int gate_arity(GateKind kind);
const char* gate_name(GateKind kind);

struct Gate {
    GateKind kind;
    NetId out;
    NetId a = 0;  // unused for CONST0/CONST1
    NetId b = 0;  // used only by two-input kinds
};

struct Port {
    std::string name;
    NetId net;
};

// Flat combinational netlist. Nets are numbered 0..net_count-1; every net has
// at most one driver (a gate output or an input port). Ports keep insertion
// order, which fixes evaluation and emission interfaces.
struct Circuit {
    std::size_t net_count = 0;
    std::vector<Gate> gates;
    std::vector<Port> inputs;
    std::vector<Port> outputs;
};

// Structural checks: net ids in range, single driver per net, no duplicate
// port names, no undriven reads or outputs, no combinational cycles.
// Returns one human-readable message per violation; empty means well formed.
std::vector<std::string> validate(const Circuit& c);

struct GateStats {
    std::map<GateKind, std::size_t> counts;
    std::size_t total = 0;

    std::size_t count(GateKind kind) const;
    bool operator==(const GateStats&) const = default;
};

GateStats gate_stats(const Circuit& c);

using Assignment = std::map<std::string, bool>;

// Reusable evaluation engine. Owns a copy of the circuit; construction
// validates it and caches a topological gate order. run() is const and takes
// caller-owned scratch, so one Evaluator may be shared across threads.
class Evaluator {
  public:
    explicit Evaluator(Circuit c);

    const Circuit& circuit() const { return circuit_; }
    std::vector<std::uint8_t> make_scratch() const;

    // scratch.size() == net_count, input nets pre-seeded by the caller
    void run(std::vector<std::uint8_t>& scratch) const;

    // name-based convenience; rejects missing or unknown input names
    Assignment evaluate(const Assignment& in) const;

  private:
    Circuit circuit_;
    std::vector<std::uint32_t> order_;  // gate indices, topologically sorted
};

// one-shot convenience wrapper
Assignment evaluate(const Circuit& c, const Assignment& in);

// Incremental construction helper used by all circuit builders.
class CircuitBuilder {
  public:
    NetId add_net();
    NetId add_input(const std::string& name);
    void mark_output(const std::string& name, NetId net);

    // allocates and returns the gate's output net
    NetId add_gate(GateKind kind, NetId a = 0, NetId b = 0);

    // constant nets are created on first use and shared afterwards
    NetId const0();
    NetId const1();

    // Copies a child circuit into this builder. Every child input must be
    // bound to an existing net; child gates and internal nets are duplicated.
    // Returns the child's output names mapped to their new nets.
    std::map<std::string, NetId> instantiate(const Circuit& child,
                                             const std::map<std::string, NetId>& bindings);

    std::size_t net_count() const { return c_.net_count; }
    Circuit build();

  private:
    void check_net(NetId n) const;

    Circuit c_;
    std::set<std::string> port_names_;
    bool has_const0_ = false;
    bool has_const1_ = false;
    NetId const0_net_ = 0;
    NetId const1_net_ = 0;
};

}  // namespace axarith
