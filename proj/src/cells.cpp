#include "axarith/cells.hpp"

#include <stdexcept>
#include <string>

namespace axarith {

Circuit build_exact_fa() {
    CircuitBuilder b;
    NetId a = b.add_input("A");
    NetId x = b.add_input("B");
    NetId cin = b.add_input("Cin");
    NetId axb = b.add_gate(GateKind::XOR2, a, x);
    NetId sum = b.add_gate(GateKind::XOR2, axb, cin);
    NetId maj1 = b.add_gate(GateKind::AND2, a, x);
    NetId maj2 = b.add_gate(GateKind::AND2, axb, cin);
    NetId cout = b.add_gate(GateKind::OR2, maj1, maj2);
    b.mark_output("Sum", sum);
    b.mark_output("Cout", cout);
    return b.build();
}

Circuit build_approx_fa() {
    CircuitBuilder b;
    NetId a = b.add_input("A");
    NetId x = b.add_input("B");
    NetId cin = b.add_input("Cin");
    NetId sum = b.add_gate(GateKind::OR2, a, cin);
    NetId cout = b.add_gate(GateKind::BUF1, x);
    b.mark_output("Sum", sum);
    b.mark_output("Cout", cout);
    return b.build();
}

Circuit build_half_adder() {
    CircuitBuilder b;
    NetId a = b.add_input("A");
    NetId x = b.add_input("B");
    NetId sum = b.add_gate(GateKind::XOR2, a, x);
    NetId cout = b.add_gate(GateKind::AND2, a, x);
    b.mark_output("Sum", sum);
    b.mark_output("Cout", cout);
    return b.build();
}

namespace {

struct Pair {
    NetId sum;
    NetId carry;
};

Pair add3(CircuitBuilder& b, const Circuit& fa, NetId x, NetId y, NetId z) {
    auto outs = b.instantiate(fa, {{"A", x}, {"B", y}, {"Cin", z}});
    return {outs.at("Sum"), outs.at("Cout")};
}

Pair add2(CircuitBuilder& b, const Circuit& ha, NetId x, NetId y) {
    auto outs = b.instantiate(ha, {{"A", x}, {"B", y}});
    return {outs.at("Sum"), outs.at("Cout")};
}

}  // namespace

Circuit build_counter(int k) {
    if (k < 4 || k > 7)
        throw std::invalid_argument("counter size " + std::to_string(k) +
                                    " out of range (4..7)");
    const Circuit fa = build_exact_fa();
    const Circuit ha = build_half_adder();
    CircuitBuilder b;
    std::vector<NetId> x;
    for (int i = 0; i < k; ++i) x.push_back(b.add_input("X" + std::to_string(i)));

    NetId s0, s1, s2;
    switch (k) {
        case 4: {
            // FA over x0..x2, then two HAs fold x3 into the low bits
            Pair t = add3(b, fa, x[0], x[1], x[2]);
            Pair low = add2(b, ha, t.sum, x[3]);
            Pair high = add2(b, ha, t.carry, low.carry);
            s0 = low.sum;
            s1 = high.sum;
            s2 = high.carry;
            break;
        }
        case 5: {
            // two FA rounds leave sum S0 and carries c0,c1; an HA combines them
            Pair t = add3(b, fa, x[0], x[1], x[2]);
            Pair u = add3(b, fa, t.sum, x[3], x[4]);
            Pair high = add2(b, ha, t.carry, u.carry);
            s0 = u.sum;
            s1 = high.sum;
            s2 = high.carry;
            break;
        }
        case 6: {
            Pair t = add3(b, fa, x[0], x[1], x[2]);
            Pair u = add3(b, fa, t.sum, x[3], x[4]);
            Pair low = add2(b, ha, u.sum, x[5]);
            Pair high = add3(b, fa, t.carry, u.carry, low.carry);
            s0 = low.sum;
            s1 = high.sum;
            s2 = high.carry;
            break;
        }
        default: {
            Pair t = add3(b, fa, x[0], x[1], x[2]);
            Pair u = add3(b, fa, x[3], x[4], x[5]);
            Pair low = add3(b, fa, t.sum, u.sum, x[6]);
            Pair high = add3(b, fa, t.carry, u.carry, low.carry);
            s0 = low.sum;
            s1 = high.sum;
            s2 = high.carry;
            break;
        }
    }
    b.mark_output("S0", s0);
    b.mark_output("S1", s1);
    b.mark_output("S2", s2);
    return b.build();
}

}  // namespace axarith
