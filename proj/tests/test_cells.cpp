#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>

#include "axarith/cells.hpp"

using namespace axarith;

namespace {

int fa_value(const Circuit& cell, int a, int b, int cin) {
    Assignment out = evaluate(cell, {{"A", a != 0}, {"B", b != 0}, {"Cin", cin != 0}});
    return int(out.at("Sum")) + 2 * int(out.at("Cout"));
}

}  // namespace

TEST_CASE("exact full adder computes a+b+cin on all rows") {
    const Circuit fa = build_exact_fa();
    REQUIRE(validate(fa).empty());
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int cin = 0; cin < 2; ++cin)
                CHECK(fa_value(fa, a, b, cin) == a + b + cin);

    GateStats s = gate_stats(fa);
    CHECK(s.total == 5);
    CHECK(s.count(GateKind::XOR2) == 2);
    CHECK(s.count(GateKind::AND2) == 2);
    CHECK(s.count(GateKind::OR2) == 1);
}

TEST_CASE("approximate full adder trades accuracy for two gates") {
    const Circuit afa = build_approx_fa();
    const Circuit fa = build_exact_fa();
    REQUIRE(validate(afa).empty());

    int sum_mismatches = 0, cout_mismatches = 0, value_errors = 0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int cin = 0; cin < 2; ++cin) {
                Assignment approx =
                    evaluate(afa, {{"A", a != 0}, {"B", b != 0}, {"Cin", cin != 0}});
                CHECK(approx.at("Sum") == ((a | cin) != 0));
                CHECK(approx.at("Cout") == (b != 0));
                Assignment exact =
                    evaluate(fa, {{"A", a != 0}, {"B", b != 0}, {"Cin", cin != 0}});
                sum_mismatches += approx.at("Sum") != exact.at("Sum");
                cout_mismatches += approx.at("Cout") != exact.at("Cout");
                const int delta = fa_value(afa, a, b, cin) - (a + b + cin);
                CHECK(delta >= -1);
                CHECK(delta <= 1);
                CHECK(delta == b - a * cin);
                value_errors += delta != 0;
            }
    CHECK(sum_mismatches == 4);
    CHECK(cout_mismatches == 2);
    CHECK(value_errors == 4);

    GateStats s = gate_stats(afa);
    CHECK(s.total == 2);
    CHECK(s.count(GateKind::OR2) == 1);
    CHECK(s.count(GateKind::BUF1) == 1);
}

TEST_CASE("half adder computes a+b") {
    const Circuit ha = build_half_adder();
    REQUIRE(validate(ha).empty());
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            Assignment out = evaluate(ha, {{"A", a != 0}, {"B", b != 0}});
            CHECK(int(out.at("Sum")) + 2 * int(out.at("Cout")) == a + b);
        }
    CHECK(gate_stats(ha).total == 2);
}

TEST_CASE("counters output the population count of their inputs") {
    for (int k = 4; k <= 7; ++k) {
        CAPTURE(k);
        const Circuit counter = build_counter(k);
        REQUIRE(validate(counter).empty());
        Evaluator eval(counter);
        for (int m = 0; m < (1 << k); ++m) {
            Assignment in;
            int expect = 0;
            for (int i = 0; i < k; ++i) {
                const bool bit = ((m >> i) & 1) != 0;
                in["X" + std::to_string(i)] = bit;
                expect += bit;
            }
            Assignment out = eval.evaluate(in);
            const int got =
                int(out.at("S0")) + 2 * int(out.at("S1")) + 4 * int(out.at("S2"));
            CHECK(got == expect);
        }
    }
}

TEST_CASE("counters reuse full and half adder cells") {
    CHECK(gate_stats(build_counter(4)).total == 9);    // 1 FA + 2 HA
    CHECK(gate_stats(build_counter(5)).total == 12);   // 2 FA + 1 HA
    CHECK(gate_stats(build_counter(6)).total == 17);   // 3 FA + 1 HA
    CHECK(gate_stats(build_counter(7)).total == 20);   // 4 FA
    CHECK(gate_stats(build_counter(7)).count(GateKind::XOR2) == 8);
}

TEST_CASE("counter sizes outside 4..7 are rejected") {
    CHECK_THROWS_AS(build_counter(3), std::invalid_argument);
    CHECK_THROWS_AS(build_counter(8), std::invalid_argument);
    CHECK_THROWS_AS(build_counter(0), std::invalid_argument);
}
