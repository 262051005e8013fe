#include <doctest.h>

#include <stdexcept>

#include <random>

#include "qap/builders.hpp"
#include "qap/oracle.hpp"

using namespace qap;

namespace {

Register zero_register(const WiringDiagram& d) { return Register(d.width); }

uint64_t bus_value(const WiringDiagram& d, const Register& r, const char* role) {
    return read_bus(r, d.layout.at(role));
}

}  // namespace

TEST_CASE("adder: worked example and identity") {
    WiringDiagram adder = build_adder(3);
    Register in = zero_register(adder);
    in = write_bus(in, adder.layout.at("a"), 5);
    in = write_bus(in, adder.layout.at("b"), 3);
    Register out = run_diagram(adder, in).reg;
    CHECK(bus_value(adder, out, "b") == 0);  // 5 + 3 = 8 = carry out, sum 000
    CHECK(bus_value(adder, out, "carry_out") == 1);
    CHECK(bus_value(adder, out, "a") == 5);

    Register id = zero_register(adder);
    id = write_bus(id, adder.layout.at("b"), 6);
    Register id_out = run_diagram(adder, id).reg;
    CHECK(bus_value(adder, id_out, "b") == 6);
    CHECK(bus_value(adder, id_out, "carry_out") == 0);
}

TEST_CASE("adder: exhaustive against plain addition") {
    for (uint32_t k = 1; k <= 5; ++k) {
        WiringDiagram adder = build_adder(k);
        CHECK(adder.reversible());
        for (uint64_t a = 0; a < (uint64_t{1} << k); ++a) {
            for (uint64_t b = 0; b < (uint64_t{1} << k); ++b) {
                Register in = zero_register(adder);
                in = write_bus(in, adder.layout.at("a"), a);
                in = write_bus(in, adder.layout.at("b"), b);
                Register out = run_diagram(adder, in).reg;
                CHECK(bus_value(adder, out, "b") == ((a + b) & ((uint64_t{1} << k) - 1)));
                CHECK(bus_value(adder, out, "carry_out") == ((a + b) >> k));
                CHECK(bus_value(adder, out, "a") == a);
                if (k > 1) {
                    CHECK(bus_value(adder, out, "carry_scratch") == 0);
                }
            }
        }
    }
}

TEST_CASE("fixed-msb adder: exhaustive for both constants") {
    for (uint32_t k = 2; k <= 5; ++k) {
        for (int msb : {0, 1}) {
            WiringDiagram adder = build_adder_fixed_msb(k, msb);
            for (uint64_t a = 0; a < (uint64_t{1} << (k - 1)); ++a) {
                for (uint64_t b = 0; b < (uint64_t{1} << k); ++b) {
                    Register in = zero_register(adder);
                    in = write_bus(in, adder.layout.at("a"), a);
                    in = write_bus(in, adder.layout.at("b"), b);
                    Register out = run_diagram(adder, in).reg;
                    uint64_t addend = a + (static_cast<uint64_t>(msb) << (k - 1));
                    CHECK(bus_value(adder, out, "b") ==
                          ((b + addend) & ((uint64_t{1} << k) - 1)));
                    CHECK(bus_value(adder, out, "carry_out") == ((b + addend) >> k));
                    CHECK(bus_value(adder, out, "a") == a);
                    CHECK(bus_value(adder, out, "carry_scratch") == 0);
                }
            }
        }
    }
}

TEST_CASE("twos complement generator") {
    WiringDiagram gen = build_twos_complement(3);
    Register in = zero_register(gen);
    in = write_bus(in, gen.layout.at("divisor"), 3);
    Register out = run_diagram(gen, in).reg;
    CHECK(bus_value(gen, out, "complement") == 5);  // complement of 011 is 101
    CHECK(bus_value(gen, out, "divisor") == 3);

    SUBCASE("zero divisor wraps to zero with a discarded overflow") {
        Register z = run_diagram(gen, zero_register(gen)).reg;
        CHECK(bus_value(gen, z, "complement") == 0);
        CHECK(bus_value(gen, z, "carry_out") == 1);
    }

    SUBCASE("exhaustive at k = 4") {
        WiringDiagram gen4 = build_twos_complement(4);
        for (uint64_t x = 0; x < 8; ++x) {  // sign line stays 0
            Register r = zero_register(gen4);
            r = write_bus(r, gen4.layout.at("divisor"), x);
            Register res = run_diagram(gen4, r).reg;
            CHECK(bus_value(gen4, res, "complement") == ((16 - x) & 15));
            CHECK(bus_value(gen4, res, "divisor") == x);
            CHECK(bus_value(gen4, res, "copy") == 0);
            CHECK(bus_value(gen4, res, "carry_scratch") == 0);
            if (x > 0) {
                CHECK(bus_value(gen4, res, "carry_out") == 0);
            }
        }
    }
}

TEST_CASE("zero test flags exactly the all-zero input") {
    WiringDiagram t3 = build_zero_test(3);
    Register zeros = zero_register(t3);
    Register out = run_diagram(t3, zeros).reg;
    CHECK(out.bit(t3.layout.at("flag").start) == 1);

    Register second = zero_register(t3);
    second = write_bus(second, t3.layout.at("inputs"), 2);  // 010
    out = run_diagram(t3, second).reg;
    CHECK(out.bit(t3.layout.at("flag").start) == 0);

    for (uint32_t k = 2; k <= 6; ++k) {
        WiringDiagram test = build_zero_test(k);
        CHECK(test.width == 2 * k - 1);  // k inputs + k-1 tree lines
        for (uint64_t value = 0; value < (uint64_t{1} << k); ++value) {
            Register in = zero_register(test);
            in = write_bus(in, test.layout.at("inputs"), value);
            Register res = run_diagram(test, in).reg;
            CHECK(res.bit(test.layout.at("flag").start) == (value == 0 ? 1 : 0));
            CHECK(bus_value(test, res, "inputs") == value);  // inputs restored
        }
    }
}

TEST_CASE("csa stage: restore path of the worked example") {
    for (Variant variant : {Variant::RestoringReversible, Variant::RestoringIrreversible}) {
        CAPTURE(variant_name(variant));
        ProblemSpec spec{4, variant};
        StagePlan plan;
        plan.stage_index = 0;
        WiringDiagram stage = build_csa_stage(spec, plan);
        const uint32_t working = stage.layout.at("carries").start;

        auto run_stage = [&](uint64_t partial, uint64_t divisor) {
            Register in = zero_register(stage);
            in = write_bus(in, stage.layout.at("partial"), partial);
            in = write_bus(in, stage.layout.at("divisor"), divisor);
            in = write_bus(in, stage.layout.at("complement"), (8 - divisor) & 3);
            return run_diagram_traced(stage, in);
        };

        // partial 001, divisor 011: subtract leaves 110 carry 0, restore
        // brings back 001 with carry 1, quotient bit 0
        TracedRun traced = run_stage(1, 3);
        REQUIRE(traced.snapshots.size() >= 5);
        const MarkSnapshot& beta1 = traced.snapshots[0];
        CHECK(beta1.checkpoint == Checkpoint::Beta1);
        CHECK(read_bus(beta1.state, stage.layout.at("partial")) == 6);
        CHECK(beta1.state.bit(working) == 0);
        for (const MarkSnapshot& snap : traced.snapshots) {
            if (snap.checkpoint == Checkpoint::Beta3) {
                CHECK(snap.state.bit(working) == 1);
            }
        }
        CHECK(read_bus(traced.reg, stage.layout.at("partial")) == 1);
        CHECK(traced.reg.bit(working) == 0);
        CHECK(bus_value(stage, traced.reg, "restore") == 0);
        if (variant == Variant::RestoringReversible) {
            CHECK(traced.reg.bit(stage.layout.at("quotient").start) == 0);
        }

        // partial 011: subtract hits 000 with carry 1, no restore
        TracedRun direct = run_stage(3, 3);
        CHECK(read_bus(direct.snapshots[0].state, stage.layout.at("partial")) == 0);
        CHECK(direct.snapshots[0].state.bit(working) == 1);
        CHECK(read_bus(direct.reg, stage.layout.at("partial")) == 0);
        CHECK(direct.reg.bit(working) == 0);
        if (variant == Variant::RestoringReversible) {
            CHECK(direct.reg.bit(stage.layout.at("quotient").start) == 1);
        }
    }
}

TEST_CASE("csa stage: random pairs match the one-step oracle") {
    std::mt19937_64 rng(2718);
    for (Variant variant : {Variant::RestoringReversible, Variant::RestoringIrreversible}) {
        ProblemSpec spec{8, variant};  // k = 5
        StagePlan plan;
        plan.stage_index = 2;
        WiringDiagram stage = build_csa_stage(spec, plan);
        const uint32_t k = spec.partial_width();
        for (int trial = 0; trial < 500; ++trial) {
            uint64_t partial = rng() % (uint64_t{1} << k);
            uint64_t divisor = 1 + rng() % ((uint64_t{1} << spec.divisor_width()) - 1);
            Register in = zero_register(stage);
            in = write_bus(in, stage.layout.at("partial"), partial);
            in = write_bus(in, stage.layout.at("divisor"), divisor);
            in = write_bus(in, stage.layout.at("complement"),
                           ((uint64_t{1} << k) - divisor) & ((uint64_t{1} << (k - 1)) - 1));
            Register out = run_diagram(stage, in).reg;
            uint64_t expected = partial >= divisor ? partial - divisor : partial;
            CHECK(read_bus(out, stage.layout.at("partial")) == expected);
            CHECK(out.bit(stage.layout.at("carries").start) == 0);
            CHECK(bus_value(stage, out, "restore") == 0);
            CHECK(bus_value(stage, out, "adder_scratch") == 0);
            if (variant == Variant::RestoringReversible) {
                CHECK(out.bit(stage.layout.at("quotient").start) ==
                      (partial >= divisor ? 1 : 0));
            }
        }
    }
}

TEST_CASE("full restoring division: golden 15 / 3 run") {
    ProblemSpec spec{4, Variant::RestoringReversible};
    WiringDiagram diagram = build_restoring_division(spec);
    CHECK(diagram.reversible());

    Register in = init_division_register(diagram, 15, 3);
    Register out = run_diagram(diagram, in).reg;
    GateOutcome outcome = read_outcome(diagram, out);
    CHECK(outcome.has_quotient);
    CHECK(outcome.quotient == 5);
    CHECK(outcome.remainder == 0);
    CHECK(outcome.flag);

    auto [oracle_outcome, oracle_trace] = oracle_restoring_division(15, 3, 4);
    StageTrace gate_trace = gate_stage_trace(diagram, in);
    CHECK(gate_trace == oracle_trace);
    REQUIRE(gate_trace.stages.size() == 3);
    CHECK(gate_trace.stages[0].carry_beta1 == 1);
    CHECK(gate_trace.stages[1].carry_beta1 == 0);
    CHECK(gate_trace.stages[1].restored);
    CHECK(gate_trace.stages[2].carry_beta1 == 1);

    ProblemSpec irrev{4, Variant::RestoringIrreversible};
    WiringDiagram irrev_diagram = build_restoring_division(irrev);
    CHECK_FALSE(irrev_diagram.reversible());
    GateOutcome irrev_outcome =
        read_outcome(irrev_diagram,
                     run_diagram(irrev_diagram, init_division_register(irrev_diagram, 15, 3)).reg);
    CHECK_FALSE(irrev_outcome.has_quotient);
    CHECK(irrev_outcome.remainder == 0);
    CHECK(irrev_outcome.flag);

    GateOutcome by_two = read_outcome(
        diagram, run_diagram(diagram, init_division_register(diagram, 15, 2)).reg);
    CHECK(by_two.quotient == 7);
    CHECK(by_two.remainder == 1);
    CHECK_FALSE(by_two.flag);
}

TEST_CASE("stage traces match the oracle trace for random divisions") {
    std::mt19937_64 rng(5150);
    for (Variant variant : {Variant::RestoringReversible, Variant::RestoringIrreversible}) {
        WiringDiagram diagram = build_restoring_division(ProblemSpec{8, variant});
        for (int trial = 0; trial < 100; ++trial) {
            uint64_t N = rng() % 256;
            uint64_t d = 2 + rng() % 14;
            auto [outcome, expect] = oracle_restoring_division(N, d, 8);
            StageTrace got = gate_stage_trace(diagram, init_division_register(diagram, N, d));
            CHECK(got == expect);
        }
    }
}

TEST_CASE("full restoring division: exhaustive small sweeps against the oracle") {
    for (uint32_t n : {4u, 6u, 8u}) {
        for (Variant variant : {Variant::RestoringReversible, Variant::RestoringIrreversible}) {
            CAPTURE(n);
            CAPTURE(variant_name(variant));
            WiringDiagram diagram = build_restoring_division(ProblemSpec{n, variant});
            uint64_t mismatches = 0;
            for (uint64_t N = 0; N < (uint64_t{1} << n); ++N) {
                for (uint64_t d = 2; d < (uint64_t{1} << (n / 2)); ++d) {
                    auto [expect, trace] = oracle_restoring_division(N, d, n);
                    Register in = init_division_register(diagram, N, d);
                    GateOutcome got = read_outcome(diagram, run_diagram(diagram, in).reg);
                    if (got.remainder != expect.remainder || got.flag != expect.flag ||
                        (got.has_quotient && got.quotient != expect.quotient)) {
                        ++mismatches;
                    }
                }
            }
            CHECK(mismatches == 0);
        }
    }
}

TEST_CASE("reversible diagram composed with its inverse is the identity") {
    std::mt19937_64 rng(1234);
    for (uint32_t n : {4u, 8u}) {
        WiringDiagram diagram =
            build_restoring_division(ProblemSpec{n, Variant::RestoringReversible});
        WiringDiagram inverse = invert_diagram(diagram);
        for (int trial = 0; trial < 200; ++trial) {
            Register reg(diagram.width);
            for (uint32_t l = 0; l < diagram.width; ++l) {
                reg.set_bit(l, static_cast<uint8_t>(rng() & 1));
            }
            CHECK(run_diagram(inverse, run_diagram(diagram, reg).reg).reg == reg);
        }
    }
    WiringDiagram irrev =
        build_restoring_division(ProblemSpec{8, Variant::RestoringIrreversible});
    CHECK_THROWS_AS(invert_diagram(irrev), std::invalid_argument);
}

TEST_CASE("stage plans expose checkpoints in execution order") {
    WiringDiagram diagram = build_restoring_division(ProblemSpec{8, Variant::RestoringReversible});
    std::vector<StagePlan> plans = stage_plans(diagram);
    REQUIRE(plans.size() == 7);
    CHECK(diagram.marks.size() == 6 * 7);
    uint64_t previous = 0;
    for (const StagePlan& p : plans) {
        CHECK(p.at_beta1 > previous);
        CHECK(p.at_beta2 > p.at_beta1);
        CHECK(p.at_alpha > p.at_beta2);
        CHECK(p.at_beta3 > p.at_alpha);
        CHECK(p.at_beta4 > p.at_beta3);
        CHECK(p.at_gamma >= p.at_beta4);
        previous = p.at_gamma;
        CHECK(p.quotient_line == diagram.layout.at("quotient").start + (6 - p.stage_index));
        if (p.stage_index < 6) {
            CHECK(p.dividend_line ==
                  diagram.layout.at("dividend").start + (5 - p.stage_index));
        } else {
            CHECK(p.dividend_line == -1);
        }
    }
}

TEST_CASE("ss divider: stage arithmetic and match test") {
    SsDivider ss = build_ss_divider(ProblemSpec{4, Variant::SuccessiveSubtraction});
    CHECK(ss.subtract_stage.width == 13);  // 3n + 1
    CHECK(ss.iteration_cap == 9);
    CHECK_FALSE(ss.subtract_stage.reversible());

    SUBCASE("one subtract pass adds the complement and exposes the carry") {
        for (uint64_t value = 0; value < 16; ++value) {
            for (uint64_t d = 1; d < 4; ++d) {
                uint64_t complement = (16 - d) & 15;
                Register in = zero_register(ss.subtract_stage);
                in = write_bus(in, ss.subtract_stage.layout.at("dividend"), value);
                in = write_bus(in, ss.subtract_stage.layout.at("complement"), complement);
                Register out = run_diagram(ss.subtract_stage, in).reg;
                CHECK(read_bus(out, ss.subtract_stage.layout.at("dividend")) ==
                      ((value + complement) & 15));
                CHECK(out.bit(ss.carry_line) == ((value + complement) >> 4));
                CHECK(read_bus(out, ss.subtract_stage.layout.at("complement")) == complement);
            }
        }
    }

    SUBCASE("match test flags exactly remainder == complement") {
        for (uint64_t remainder = 0; remainder < 16; ++remainder) {
            for (uint64_t complement = 0; complement < 16; ++complement) {
                Register in = zero_register(ss.match_test);
                in = write_bus(in, ss.match_test.layout.at("dividend"), remainder);
                in = write_bus(in, ss.match_test.layout.at("complement"), complement);
                Register out = run_diagram(ss.match_test, in).reg;
                CHECK(out.bit(ss.match_test.layout.at("flag").start) ==
                      (remainder == complement ? 1 : 0));
            }
        }
    }

    SUBCASE("single-pass export form concatenates stage and match") {
        WiringDiagram pass = ss_single_pass(ss);
        CHECK(pass.gate_count() ==
              ss.subtract_stage.gate_count() + ss.match_test.gate_count());
        CHECK(pass.width == ss.subtract_stage.width);
    }
}

TEST_CASE("resource formulas: frozen values") {
    CHECK(paper_bits(4, Variant::RestoringReversible) == 22);
    CHECK(paper_bits(6, Variant::RestoringReversible) == 34);
    for (uint32_t n = 4; n <= 64; n += 2) {
        CHECK(paper_bits(n, Variant::RestoringIrreversible) == 4 * n);
        CHECK(paper_bits(n, Variant::SuccessiveSubtraction) == 3 * n + 1);
        CHECK(paper_bits(n, Variant::RestoringReversible) == 6 * n - 2);
    }
    CHECK(paper_ops(4, Variant::RestoringReversible) == 274);
    CHECK(paper_ops(32, Variant::RestoringReversible) == 12202);
    CHECK(paper_ops(32, Variant::RestoringIrreversible) == 12202);
    CHECK(reference_ops(32, Variant::RestoringReversible) == 11264);
    // the exact sum stays within 10% of the rounded 11n^2 form at n = 32
    CHECK(12202 - 11264 < 11264 / 10);
    CHECK(paper_ops(8, Variant::SuccessiveSubtraction) == OpsCount{8984});
    CHECK(reference_bits(8, Variant::SuccessiveSubtraction) == 25);
    CHECK(ops_to_string(paper_ops(64, Variant::SuccessiveSubtraction)) ==
          "4777706715090773868736");  // (8n+6) * 2^63 + 3n, past 64-bit range
    CHECK_THROWS_AS(paper_bits(5, Variant::RestoringReversible), std::invalid_argument);
    CHECK_THROWS_AS(paper_ops(2, Variant::RestoringReversible), std::invalid_argument);
}

TEST_CASE("measured widths stay within the published accounting") {
    for (uint32_t n : {4u, 8u, 16u, 32u}) {
        for (Variant variant : {Variant::RestoringReversible, Variant::RestoringIrreversible}) {
            WiringDiagram diagram = build_restoring_division(ProblemSpec{n, variant});
            ResourceReport report = resource_stats(diagram, n, variant);
            CHECK(report.bits_measured == diagram.width);
            CHECK(report.ops_measured == diagram.gate_count());
            CHECK(report.bits_measured <= report.bits_paper);
        }
        SsDivider ss = build_ss_divider(ProblemSpec{n, Variant::SuccessiveSubtraction});
        ResourceReport ss_report = resource_stats(ss, n);
        CHECK(ss_report.bits_measured == paper_bits(n, Variant::SuccessiveSubtraction));
    }
    // pinned geometry at the smallest size
    CHECK(build_restoring_division(ProblemSpec{4, Variant::RestoringReversible}).width == 21);
    CHECK(build_restoring_division(ProblemSpec{4, Variant::RestoringIrreversible}).width == 15);
}

TEST_CASE("measured ops grow quadratically") {
    for (Variant variant : {Variant::RestoringReversible, Variant::RestoringIrreversible}) {
        for (uint32_t n : {8u, 16u, 32u}) {
            uint64_t ops_n =
                build_restoring_division(ProblemSpec{n, variant}).gate_count();
            uint64_t ops_2n =
                build_restoring_division(ProblemSpec{2 * n, variant}).gate_count();
            double ratio = static_cast<double>(ops_2n) / static_cast<double>(ops_n);
            CHECK(ratio >= 3.0);
            CHECK(ratio <= 5.0);
        }
    }
}
