#include "qap/builders.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace qap {

namespace {

// Assembles a diagram while allocating layout roles line-by-line, so the
// roles always tile [0, width) in declaration order.
class DiagramBuilder {
public:
    LineRange role(std::string name, uint32_t length) {
        LineRange range{width_, length};
        layout_.add(std::move(name), range);
        width_ += length;
        return range;
    }

    uint32_t line(std::string name) { return role(std::move(name), 1).start; }

    void gate(Gate g) { gates_.push_back(g); }

    uint64_t position() const { return gates_.size(); }

    uint64_t mark(uint32_t stage, Checkpoint cp) {
        marks_.push_back(Mark{stage, cp, gates_.size()});
        return gates_.size();
    }

    WiringDiagram finish() {
        WiringDiagram diagram;
        diagram.width = width_;
        diagram.gates = std::move(gates_);
        diagram.layout = std::move(layout_);
        diagram.marks = std::move(marks_);
        diagram.layout.validate(diagram.width, true);
        diagram.validate();
        return diagram;
    }

private:
    uint32_t width_ = 0;
    std::vector<Gate> gates_;
    Layout layout_;
    std::vector<Mark> marks_;
};

std::vector<uint32_t> lines_of(LineRange range) {
    std::vector<uint32_t> lines(range.length);
    for (uint32_t i = 0; i < range.length; ++i) lines[i] = range.start + i;
    return lines;
}

// Ripple-carry adder core, LSB first: forward carry chain into the scratch
// lines, top sum bit, then uncompute back down while producing the remaining
// sum bits. b <- (a + b) mod 2^k, carry_out <- overflow, scratch restored to
// zero. When fixed_msb is 0 or 1 the a operand has k-1 lines and its top bit
// is that constant (the gates touching it collapse accordingly).
void emit_adder_lines(DiagramBuilder& b, const std::vector<uint32_t>& a,
                      const std::vector<uint32_t>& bus, const std::vector<uint32_t>& scratch,
                      uint32_t carry_out, int fixed_msb = -1) {
    const uint32_t k = static_cast<uint32_t>(bus.size());
    assert(k >= 1);
    assert(a.size() == (fixed_msb < 0 ? k : k - 1));
    assert(scratch.size() >= k - 1);
    auto carry = [&](uint32_t i) { return i == k ? carry_out : scratch[i - 1]; };

    if (k == 1) {
        if (fixed_msb < 0) {
            b.gate(Gate::toffoli(a[0], bus[0], carry_out));
            b.gate(Gate::cnot(a[0], bus[0]));
        } else if (fixed_msb == 1) {
            b.gate(Gate::cnot(bus[0], carry_out));
            b.gate(Gate::not_gate(bus[0]));
        }
        return;
    }

    for (uint32_t i = 0; i < k; ++i) {
        const uint32_t next = carry(i + 1);
        if (fixed_msb >= 0 && i == k - 1) {
            if (fixed_msb == 1) {
                b.gate(Gate::cnot(bus[i], next));
                b.gate(Gate::not_gate(bus[i]));
            }
        } else {
            b.gate(Gate::toffoli(a[i], bus[i], next));
            b.gate(Gate::cnot(a[i], bus[i]));
        }
        if (i > 0) b.gate(Gate::toffoli(carry(i), bus[i], next));
    }

    // bus[k-1] holds a^b of the top position; fold in the incoming carry.
    b.gate(Gate::cnot(carry(k - 1), bus[k - 1]));

    for (uint32_t i = k - 2;; --i) {
        if (i > 0) {
            b.gate(Gate::toffoli(carry(i), bus[i], carry(i + 1)));
            b.gate(Gate::cnot(a[i], bus[i]));
            b.gate(Gate::toffoli(a[i], bus[i], carry(i + 1)));
            b.gate(Gate::cnot(a[i], bus[i]));
            b.gate(Gate::cnot(carry(i), bus[i]));
        } else {
            b.gate(Gate::cnot(a[0], bus[0]));
            b.gate(Gate::toffoli(a[0], bus[0], carry(1)));
            b.gate(Gate::cnot(a[0], bus[0]));
            break;
        }
    }
}

// Pairwise TOFFOLI fold; an odd node carries over to the next level, so
// exactly nodes.size()-1 targets are consumed and the final combine lands on
// targets.back().
void emit_and_tree(DiagramBuilder& b, std::vector<uint32_t> nodes,
                   const std::vector<uint32_t>& targets) {
    assert(!nodes.empty() && targets.size() == nodes.size() - 1);
    size_t next = 0;
    while (nodes.size() > 1) {
        std::vector<uint32_t> level;
        for (size_t i = 0; i + 1 < nodes.size(); i += 2) {
            const uint32_t t = targets[next++];
            b.gate(Gate::toffoli(nodes[i], nodes[i + 1], t));
            level.push_back(t);
        }
        if (nodes.size() % 2) level.push_back(nodes.back());
        nodes = std::move(level);
    }
    assert(next == targets.size());
}

// Builds the divisor's complement on the complement bus: an inverted divisor
// copy on the copy bus, plus one, then the copy is taken back to zero through
// the same divisor-controlled gates.
void emit_complement_generator(DiagramBuilder& b, const std::vector<uint32_t>& divisor,
                               const std::vector<uint32_t>& complement,
                               const std::vector<uint32_t>& copy,
                               const std::vector<uint32_t>& scratch, uint32_t carry_out) {
    for (size_t i = 0; i < divisor.size(); ++i) {
        b.gate(Gate::cnot(divisor[i], copy[i]));
        b.gate(Gate::not_gate(copy[i]));
    }
    b.gate(Gate::not_gate(complement[0]));
    emit_adder_lines(b, copy, complement, scratch, carry_out);
    for (size_t i = 0; i < divisor.size(); ++i) {
        b.gate(Gate::not_gate(copy[i]));
        b.gate(Gate::cnot(divisor[i], copy[i]));
    }
}

struct StageLines {
    std::vector<uint32_t> bus;         // partial bus, k lines LSB first
    std::vector<uint32_t> divisor;     // n/2 lines
    std::vector<uint32_t> complement;  // n/2 lines, implied constant sign 1
    std::vector<uint32_t> restore;     // n/2 lines, zero between stages
    std::vector<uint32_t> scratch;     // n/2 ripple lines
    uint32_t working = 0;
    int64_t quotient_line = -1;
    int64_t vacated_line = -1;  // partial MSB freed by this stage's shift
};

// One conditional subtract-add: trial subtraction by adding the complement,
// the carry at beta1 is the quotient bit, a 0 carry selects the divisor onto
// the restore bus which the second adder adds back. The working carry is
// returned to zero by beta4 and the restore bus is unloaded. Irreversible
// variant: RESET replaces the quotient-controlled clears and the vacated
// partial MSB is reset at gamma.
void emit_csa_body(DiagramBuilder& b, Variant variant, uint32_t stage, const StageLines& L,
                   StagePlan& plan) {
    const bool reversible = variant == Variant::RestoringReversible;

    emit_adder_lines(b, L.complement, L.bus, L.scratch, L.working, 1);
    plan.at_beta1 = b.mark(stage, Checkpoint::Beta1);

    if (reversible) {
        const auto q = static_cast<uint32_t>(L.quotient_line);
        b.gate(Gate::cnot(L.working, q));
        b.gate(Gate::cnot(q, L.working));
        plan.at_beta2 = b.mark(stage, Checkpoint::Beta2);

        b.gate(Gate::not_gate(q));
        for (size_t i = 0; i < L.divisor.size(); ++i) {
            b.gate(Gate::toffoli(q, L.divisor[i], L.restore[i]));
        }
        b.gate(Gate::not_gate(q));
        plan.at_alpha = b.mark(stage, Checkpoint::Alpha);

        emit_adder_lines(b, L.restore, L.bus, L.scratch, L.working, 0);
        plan.at_beta3 = b.mark(stage, Checkpoint::Beta3);

        b.gate(Gate::cnot(q, L.working));
        b.gate(Gate::not_gate(L.working));
        plan.at_beta4 = b.mark(stage, Checkpoint::Beta4);

        b.gate(Gate::not_gate(q));
        for (size_t i = 0; i < L.divisor.size(); ++i) {
            b.gate(Gate::toffoli(q, L.divisor[i], L.restore[i]));
        }
        b.gate(Gate::not_gate(q));
    } else {
        b.gate(Gate::not_gate(L.working));
        for (size_t i = 0; i < L.divisor.size(); ++i) {
            b.gate(Gate::toffoli(L.working, L.divisor[i], L.restore[i]));
        }
        b.gate(Gate::not_gate(L.working));
        plan.at_alpha = b.mark(stage, Checkpoint::Alpha);

        b.gate(Gate::reset(L.working));
        plan.at_beta2 = b.mark(stage, Checkpoint::Beta2);

        emit_adder_lines(b, L.restore, L.bus, L.scratch, L.working, 0);
        plan.at_beta3 = b.mark(stage, Checkpoint::Beta3);

        b.gate(Gate::reset(L.working));
        plan.at_beta4 = b.mark(stage, Checkpoint::Beta4);

        for (size_t i = 0; i < L.divisor.size(); ++i) {
            b.gate(Gate::creset(L.divisor[i], L.restore[i]));
        }
        if (L.vacated_line >= 0) {
            b.gate(Gate::reset(static_cast<uint32_t>(L.vacated_line)));
        }
    }
    plan.at_gamma = b.mark(stage, Checkpoint::Gamma);
}

void require_restoring(const ProblemSpec& spec) {
    if (spec.variant == Variant::SuccessiveSubtraction) {
        throw std::invalid_argument("expected a restoring variant");
    }
}

uint64_t width_mask(uint32_t bits) {
    return bits >= 64 ? ~uint64_t{0} : (uint64_t{1} << bits) - 1;
}

}  // namespace

std::string_view variant_name(Variant variant) {
    switch (variant) {
        case Variant::RestoringReversible: return "restoring";
        case Variant::RestoringIrreversible: return "restoring-irrev";
        case Variant::SuccessiveSubtraction: return "ss";
    }
    return "?";
}

Variant variant_from_name(std::string_view name) {
    for (Variant v : {Variant::RestoringReversible, Variant::RestoringIrreversible,
                      Variant::SuccessiveSubtraction}) {
        if (variant_name(v) == name) return v;
    }
    throw std::invalid_argument("unknown variant '" + std::string(name) +
                                "' (expected restoring, restoring-irrev, or ss)");
}

std::string ops_to_string(OpsCount value) {
    if (value == 0) return "0";
    std::string digits;
    while (value > 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
        value /= 10;
    }
    std::reverse(digits.begin(), digits.end());
    return digits;
}

void ProblemSpec::validate() const {
    if (n < 4 || n > 64) {
        throw std::invalid_argument("problem size n must be in [4, 64], got " + std::to_string(n));
    }
    if (n % 2 != 0) {
        throw std::invalid_argument("problem size n must be even, got " + std::to_string(n));
    }
}

WiringDiagram build_adder(uint32_t k) {
    if (k < 1 || k > 64) throw std::invalid_argument("adder width must be in [1, 64]");
    DiagramBuilder b;
    auto a = lines_of(b.role("a", k));
    auto bus = lines_of(b.role("b", k));
    std::vector<uint32_t> scratch;
    if (k > 1) scratch = lines_of(b.role("carry_scratch", k - 1));
    uint32_t carry_out = b.line("carry_out");
    emit_adder_lines(b, a, bus, scratch, carry_out);
    return b.finish();
}

WiringDiagram build_adder_fixed_msb(uint32_t k, int msb) {
    if (k < 2 || k > 64) throw std::invalid_argument("adder width must be in [2, 64]");
    if (msb != 0 && msb != 1) throw std::invalid_argument("fixed msb must be 0 or 1");
    DiagramBuilder b;
    auto a = lines_of(b.role("a", k - 1));
    auto bus = lines_of(b.role("b", k));
    auto scratch = lines_of(b.role("carry_scratch", k - 1));
    uint32_t carry_out = b.line("carry_out");
    emit_adder_lines(b, a, bus, scratch, carry_out, msb);
    return b.finish();
}

WiringDiagram build_twos_complement(uint32_t k) {
    if (k < 2 || k > 64) throw std::invalid_argument("complement width must be in [2, 64]");
    DiagramBuilder b;
    auto divisor = lines_of(b.role("divisor", k));
    auto complement = lines_of(b.role("complement", k));
    auto copy = lines_of(b.role("copy", k));
    auto scratch = lines_of(b.role("carry_scratch", k - 1));
    uint32_t carry_out = b.line("carry_out");
    emit_complement_generator(b, divisor, complement, copy, scratch, carry_out);
    return b.finish();
}

WiringDiagram build_zero_test(uint32_t k) {
    if (k < 2 || k > 4096) throw std::invalid_argument("zero test needs at least 2 inputs");
    DiagramBuilder b;
    auto inputs = lines_of(b.role("inputs", k));
    std::vector<uint32_t> targets;
    if (k > 2) targets = lines_of(b.role("zero_test_scratch", k - 2));
    targets.push_back(b.line("flag"));
    for (uint32_t line : inputs) b.gate(Gate::not_gate(line));
    emit_and_tree(b, inputs, targets);
    for (uint32_t line : inputs) b.gate(Gate::not_gate(line));
    return b.finish();
}

WiringDiagram build_csa_stage(const ProblemSpec& spec, StagePlan& plan) {
    spec.validate();
    require_restoring(spec);
    const bool reversible = spec.variant == Variant::RestoringReversible;
    const uint32_t w = spec.divisor_width();

    DiagramBuilder b;
    StageLines L;
    L.bus = lines_of(b.role("partial", spec.partial_width()));
    L.divisor = lines_of(b.role("divisor", w));
    L.complement = lines_of(b.role("complement", w));
    L.restore = lines_of(b.role("restore", w));
    L.scratch = lines_of(b.role("adder_scratch", w));
    L.working = b.line("carries");
    if (reversible) {
        L.quotient_line = b.line("quotient");
    }
    plan.dividend_line = -1;
    plan.quotient_line = L.quotient_line;
    emit_csa_body(b, spec.variant, plan.stage_index, L, plan);
    return b.finish();
}

WiringDiagram build_restoring_division(const ProblemSpec& spec) {
    spec.validate();
    require_restoring(spec);
    const bool reversible = spec.variant == Variant::RestoringReversible;
    const uint32_t n = spec.n;
    const uint32_t w = spec.divisor_width();
    const uint32_t k = spec.partial_width();

    DiagramBuilder b;
    auto dividend = b.role("dividend", n - 2);
    auto partial = b.role("partial", k);
    auto divisor = lines_of(b.role("divisor", w));
    auto complement = lines_of(b.role("complement", w));
    auto restore = lines_of(b.role("restore", w));
    auto scratch = lines_of(b.role("adder_scratch", w));
    // Line 0 of the carries role is the working carry; the reversible variant
    // also allocates the per-stage saved-carry lines the published accounting
    // lists, which the stage logic never needs to touch.
    LineRange carries = b.role("carries", reversible ? n : 1);
    LineRange quotient{};
    if (reversible) quotient = b.role("quotient", n - 1);
    LineRange zts{};
    if (w > 2) zts = b.role("zero_test_scratch", w - 2);
    uint32_t flag = b.line("flag");

    std::vector<uint32_t> gen_scratch(scratch.begin(), scratch.begin() + (w - 1));
    emit_complement_generator(b, divisor, complement, restore, gen_scratch, carries.start);
    if (!reversible) {
        b.gate(Gate::reset(carries.start));  // clears the x = 0 overflow
    }

    assert(partial.start == dividend.start + (n - 2));

    for (uint32_t j = 0; j + 1 < n; ++j) {
        StageLines L;
        const uint32_t lsb = dividend.start + (n - 2 - j);
        L.bus.resize(k);
        for (uint32_t i = 0; i < k; ++i) L.bus[i] = lsb + i;
        L.divisor = divisor;
        L.complement = complement;
        L.restore = restore;
        L.scratch = scratch;
        L.working = carries.start;
        if (reversible) L.quotient_line = quotient.start + (n - 2 - j);
        if (j + 2 < n && !reversible) L.vacated_line = L.bus[k - 1];
        StagePlan plan;
        plan.stage_index = j;
        emit_csa_body(b, spec.variant, j, L, plan);
        // Shift at gamma: the bus moves one line toward the dividend's low
        // end and takes in the next dividend bit; wiring only, no gates.
    }

    // After n-2 shifts the partial bus sits at the bottom of the
    // dividend/partial region; its low n/2 lines hold the remainder. Invert,
    // fold, re-invert so the remainder survives the test.
    std::vector<uint32_t> test_inputs(w);
    for (uint32_t i = 0; i < w; ++i) test_inputs[i] = dividend.start + i;
    std::vector<uint32_t> targets;
    if (zts.length > 0) targets = lines_of(zts);
    targets.push_back(flag);
    for (uint32_t line : test_inputs) b.gate(Gate::not_gate(line));
    emit_and_tree(b, test_inputs, targets);
    for (uint32_t line : test_inputs) b.gate(Gate::not_gate(line));

    return b.finish();
}

std::vector<StagePlan> stage_plans(const WiringDiagram& diagram) {
    const uint32_t n = problem_size(diagram);
    const bool reversible = diagram.layout.has("quotient");
    LineRange dividend = diagram.layout.at("dividend");
    std::vector<StagePlan> plans(n - 1);
    for (uint32_t j = 0; j + 1 < n; ++j) {
        plans[j].stage_index = j;
        plans[j].dividend_line =
            j + 2 < n ? static_cast<int64_t>(dividend.start + (n - 3 - j)) : -1;
        plans[j].quotient_line =
            reversible ? static_cast<int64_t>(diagram.layout.at("quotient").start + (n - 2 - j))
                       : -1;
    }
    for (const Mark& m : diagram.marks) {
        if (m.stage >= plans.size()) continue;
        StagePlan& p = plans[m.stage];
        switch (m.checkpoint) {
            case Checkpoint::Beta1: p.at_beta1 = m.gate_index; break;
            case Checkpoint::Beta2: p.at_beta2 = m.gate_index; break;
            case Checkpoint::Alpha: p.at_alpha = m.gate_index; break;
            case Checkpoint::Beta3: p.at_beta3 = m.gate_index; break;
            case Checkpoint::Beta4: p.at_beta4 = m.gate_index; break;
            case Checkpoint::Gamma: p.at_gamma = m.gate_index; break;
        }
    }
    return plans;
}

SsDivider build_ss_divider(const ProblemSpec& spec) {
    spec.validate();
    if (spec.variant != Variant::SuccessiveSubtraction) {
        throw std::invalid_argument("expected the ss variant");
    }
    const uint32_t n = spec.n;

    DiagramBuilder stage_builder;
    auto dividend = lines_of(stage_builder.role("dividend", n));
    auto complement = lines_of(stage_builder.role("complement", n));
    auto scratch = lines_of(stage_builder.role("adder_scratch", n - 1));
    uint32_t carry = stage_builder.line("carries");
    stage_builder.line("flag");
    stage_builder.gate(Gate::reset(carry));
    emit_adder_lines(stage_builder, complement, dividend, scratch, carry);

    SsDivider ss;
    ss.subtract_stage = stage_builder.finish();
    ss.carry_line = carry;
    ss.iteration_cap = (uint64_t{1} << (n - 1)) + 1;

    // Match test: carry back to one, complement inverted so its zeros select,
    // each selected line flips the corresponding remainder bit, then an
    // all-ones fold through the ripple-scratch lines sets the flag.
    DiagramBuilder match_builder;
    auto m_dividend = lines_of(match_builder.role("dividend", n));
    auto m_complement = lines_of(match_builder.role("complement", n));
    auto m_scratch = lines_of(match_builder.role("adder_scratch", n - 1));
    uint32_t m_carry = match_builder.line("carries");
    uint32_t m_flag = match_builder.line("flag");
    match_builder.gate(Gate::not_gate(m_carry));
    for (uint32_t line : m_complement) match_builder.gate(Gate::not_gate(line));
    for (uint32_t i = 0; i < n; ++i) {
        match_builder.gate(Gate::cnot(m_complement[i], m_dividend[i]));
    }
    emit_and_tree(match_builder, m_dividend, m_scratch);
    match_builder.gate(Gate::cnot(m_scratch[n - 2], m_flag));
    ss.match_test = match_builder.finish();
    return ss;
}

WiringDiagram ss_single_pass(const SsDivider& ss) {
    WiringDiagram pass = ss.subtract_stage;
    pass.gates.insert(pass.gates.end(), ss.match_test.gates.begin(), ss.match_test.gates.end());
    pass.validate();
    return pass;
}

uint32_t problem_size(const WiringDiagram& diagram) {
    LineRange dividend = diagram.layout.at("dividend");
    if (diagram.layout.has("partial")) {
        return dividend.length + 2;
    }
    return dividend.length;
}

LineRange remainder_range(const WiringDiagram& diagram) {
    LineRange dividend = diagram.layout.at("dividend");
    if (const LineRange* partial = diagram.layout.find("partial")) {
        return LineRange{dividend.start, partial->length};
    }
    return dividend;
}

Register init_division_register(const WiringDiagram& diagram, uint64_t dividend_value,
                                uint64_t divisor_value) {
    const uint32_t n = problem_size(diagram);
    if (n < 64 && (dividend_value >> n)) {
        throw std::invalid_argument("dividend does not fit in " + std::to_string(n) + " bits");
    }
    Register reg(diagram.width);
    if (diagram.layout.has("partial")) {
        if (divisor_value >> (n / 2)) {
            throw std::invalid_argument("divisor does not fit in " + std::to_string(n / 2) +
                                        " bits");
        }
        LineRange dividend = diagram.layout.at("dividend");
        LineRange partial = diagram.layout.at("partial");
        for (uint32_t i = 0; i + 2 < n; ++i) {
            reg.set_bit(dividend.start + i, (dividend_value >> i) & 1u);
        }
        reg.set_bit(partial.start, (dividend_value >> (n - 2)) & 1u);
        reg.set_bit(partial.start + 1, (dividend_value >> (n - 1)) & 1u);
        reg = write_bus(reg, diagram.layout.at("divisor"), divisor_value);
    } else {
        if (divisor_value >> (n / 2)) {
            throw std::invalid_argument("divisor does not fit in " + std::to_string(n / 2) +
                                        " bits");
        }
        reg = write_bus(reg, diagram.layout.at("dividend"), dividend_value);
        uint64_t complement = (~divisor_value + 1) & width_mask(n);
        reg = write_bus(reg, diagram.layout.at("complement"), complement);
    }
    return reg;
}

GateOutcome read_outcome(const WiringDiagram& diagram, const Register& final_state) {
    GateOutcome outcome;
    outcome.remainder = read_bus(final_state, remainder_range(diagram));
    outcome.flag = final_state.bit(diagram.layout.at("flag").start) != 0;
    if (const LineRange* quotient = diagram.layout.find("quotient")) {
        outcome.has_quotient = true;
        outcome.quotient = read_bus(final_state, *quotient);
    }
    return outcome;
}

StageTrace gate_stage_trace(const WiringDiagram& diagram, const Register& input) {
    const uint32_t n = problem_size(diagram);
    const uint32_t k = diagram.layout.at("partial").length;
    const uint32_t working = diagram.layout.at("carries").start;
    const uint64_t divisor = read_bus(input, diagram.layout.at("divisor"));
    const uint64_t mask = width_mask(k);

    uint64_t dividend = 0;
    LineRange dividend_role = diagram.layout.at("dividend");
    LineRange partial_role = diagram.layout.at("partial");
    for (uint32_t i = 0; i + 2 < n; ++i) {
        dividend |= static_cast<uint64_t>(input.bit(dividend_role.start + i)) << i;
    }
    dividend |= static_cast<uint64_t>(input.bit(partial_role.start)) << (n - 2);
    dividend |= static_cast<uint64_t>(input.bit(partial_role.start + 1)) << (n - 1);

    TracedRun traced = run_diagram_traced(diagram, input);
    auto snapshot = [&](uint32_t stage, Checkpoint cp) -> const Register& {
        for (const MarkSnapshot& s : traced.snapshots) {
            if (s.stage == stage && s.checkpoint == cp) return s.state;
        }
        throw std::logic_error("missing checkpoint snapshot");
    };

    StageTrace trace{n, dividend, divisor, {}};
    for (uint32_t j = 0; j + 1 < n; ++j) {
        const Register& at_beta1 = snapshot(j, Checkpoint::Beta1);
        LineRange bus{dividend_role.start + (n - 2 - j), k};
        uint64_t after_subtract = read_bus(at_beta1, bus);
        StageRecord rec;
        rec.carry_beta1 = at_beta1.bit(working);
        rec.partial_before = (after_subtract + divisor) & mask;
        rec.restored = rec.carry_beta1 == 0;
        rec.quotient_bit = rec.carry_beta1;
        const Register& at_gamma = snapshot(j, Checkpoint::Gamma);
        LineRange next_bus = j + 2 < n ? LineRange{dividend_role.start + (n - 3 - j), k} : bus;
        rec.partial_after = read_bus(at_gamma, next_bus);
        trace.stages.push_back(rec);
    }
    return trace;
}

uint64_t paper_bits(uint32_t n, Variant variant) {
    ProblemSpec{n, variant}.validate();
    const uint64_t half = n / 2;
    switch (variant) {
        case Variant::RestoringReversible:
            return half + half + 3 * (half + 1) + (n - 2) + (n - 1) + (n - 1) + (half - 1);
        case Variant::RestoringIrreversible:
            return half + half + 3 * (half + 1) + (n - 2) + (half - 1);
        case Variant::SuccessiveSubtraction:
            return 3 * uint64_t{n} + 1;
    }
    return 0;
}

OpsCount paper_ops(uint32_t n, Variant variant) {
    ProblemSpec{n, variant}.validate();
    const OpsCount big_n = n;
    switch (variant) {
        case Variant::RestoringReversible:
        case Variant::RestoringIrreversible: {
            const OpsCount adder = 4 * big_n + 14;
            return adder + (3 * big_n) / 2 + (big_n - 1) * (2 * adder + 3 * big_n + 7) +
                   big_n / 2 - 1;
        }
        case Variant::SuccessiveSubtraction:
            return (8 * big_n + 6) * (OpsCount{1} << (n - 1)) + 3 * big_n;
    }
    return 0;
}

uint64_t reference_bits(uint32_t n, Variant variant) {
    ProblemSpec{n, variant}.validate();
    switch (variant) {
        case Variant::RestoringReversible: return 6 * uint64_t{n} - 2;
        case Variant::RestoringIrreversible: return 4 * uint64_t{n};
        case Variant::SuccessiveSubtraction: return 3 * uint64_t{n} + 1;
    }
    return 0;
}

OpsCount reference_ops(uint32_t n, Variant variant) {
    ProblemSpec{n, variant}.validate();
    const OpsCount big_n = n;
    switch (variant) {
        case Variant::RestoringReversible:
        case Variant::RestoringIrreversible:
            return 11 * big_n * big_n;
        case Variant::SuccessiveSubtraction:
            return 11 * big_n * (OpsCount{1} << (n - 1));
    }
    return 0;
}

ResourceReport resource_stats(const WiringDiagram& diagram, uint32_t n, Variant variant) {
    ProblemSpec{n, variant}.validate();
    require_restoring(ProblemSpec{n, variant});
    ResourceReport report;
    report.n = n;
    report.variant = variant;
    report.bits_measured = diagram.width;
    report.ops_measured = diagram.gate_count();
    report.bits_paper = paper_bits(n, variant);
    report.ops_paper = paper_ops(n, variant);
    return report;
}

ResourceReport resource_stats(const SsDivider& ss, uint32_t n) {
    ProblemSpec{n, Variant::SuccessiveSubtraction}.validate();
    ResourceReport report;
    report.n = n;
    report.variant = Variant::SuccessiveSubtraction;
    report.bits_measured = ss.subtract_stage.width;
    report.ops_measured = (OpsCount{1} << (n - 1)) * ss.subtract_stage.gate_count() +
                          ss.match_test.gate_count();
    report.bits_paper = paper_bits(n, Variant::SuccessiveSubtraction);
    report.ops_paper = paper_ops(n, Variant::SuccessiveSubtraction);
    return report;
}

}  // namespace qap
