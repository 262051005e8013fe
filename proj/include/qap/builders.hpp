#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qap/netlist.hpp"
#include "qap/oracle.hpp"
#include "qap/register.hpp"

namespace qap {

enum class Variant : uint8_t {
    RestoringReversible,
    RestoringIrreversible,
    SuccessiveSubtraction,
};

std::string_view variant_name(Variant variant);          // restoring / restoring-irrev / ss
Variant variant_from_name(std::string_view name);

/// Gate-application counts can exceed 64 bits for the successive-subtraction
/// worst case at large n.
using OpsCount = unsigned __int128;

std::string ops_to_string(OpsCount value);

/// Problem geometry for one division diagram.
///
/// n is the dividend bit count, even and in [4, 64] (odd inputs are padded
/// upstream). Divisors use n/2 lines; partial-dividend arithmetic runs over
/// n/2 + 1 lines (divisor width plus a sign line).
struct ProblemSpec {
    uint32_t n = 4;
    Variant variant = Variant::RestoringIrreversible;

    uint32_t divisor_width() const { return n / 2; }
    uint32_t partial_width() const { return n / 2 + 1; }

    void validate() const;
};

/// Per-stage bookkeeping of a built restoring diagram: which dividend line
/// the stage consumes at its shift, where its quotient bit lands, and the
/// gate indices of the stage checkpoints.
struct StagePlan {
    uint32_t stage_index = 0;
    int64_t dividend_line = -1;  // -1 when the stage has no shift (last stage)
    int64_t quotient_line = -1;  // -1 for the irreversible variant
    uint64_t at_beta1 = 0;
    uint64_t at_beta2 = 0;
    uint64_t at_alpha = 0;
    uint64_t at_beta3 = 0;
    uint64_t at_beta4 = 0;
    uint64_t at_gamma = 0;
};

// ---------------------------------------------------------------------------
// Fragments
// ---------------------------------------------------------------------------

/// Ripple-carry adder over two k-line buses, layout {a, b, carry_scratch,
/// carry_out}. No carry-in; b ends holding (a + b) mod 2^k, carry_out the
/// overflow bit, a and the scratch lines are returned to their entry values
/// (scratch must be zero on entry).
WiringDiagram build_adder(uint32_t k);

/// Adder variant the division stages use: the a operand has k-1 lines plus a
/// constant most-significant bit. b <- (b + a + msb * 2^(k-1)) mod 2^k.
/// Layout {a: k-1, b: k, carry_scratch: k-1, carry_out: 1}.
WiringDiagram build_adder_fixed_msb(uint32_t k, int msb);

/// Twos-complement generator: complement <- (2^k - x) mod 2^k from a k-line
/// divisor bus (value x with sign line 0, x < 2^(k-1)). The inverted divisor
/// copy is built on the copy bus and returned to zero through the same
/// divisor-controlled gates. Layout {divisor, complement, copy,
/// carry_scratch, carry_out}; carry_out fires only for x = 0 (the discarded
/// overflow).
WiringDiagram build_twos_complement(uint32_t k);

/// Zero-remainder test over k input lines: flag <- 1 iff all inputs are 0.
/// Inputs are inverted, folded through a k-1-node AND tree, and re-inverted,
/// so they leave the test unchanged. Layout {inputs, zero_test_scratch: k-2
/// (omitted when empty), flag}; the tree root is the flag line.
WiringDiagram build_zero_test(uint32_t k);

/// One conditional subtract-add stage in isolation (no shift): trial-subtract
/// via the complement, save the carry as the quotient bit, and add the
/// divisor back when the carry was 0. Layout {partial, divisor, complement,
/// restore, adder_scratch, carries, quotient (reversible only)}; the
/// complement bus holds the low n/2 lines of the divisor's twos complement.
/// plan.stage_index selects the mark labels; line/checkpoint fields are
/// filled in.
WiringDiagram build_csa_stage(const ProblemSpec& spec, StagePlan& plan);

// ---------------------------------------------------------------------------
// Full diagrams
// ---------------------------------------------------------------------------

/// The full restoring-division diagram: twos-complement generation, n-1
/// conditional subtract-add stages (the partial bus shifts one line toward
/// the dividend's low end per stage; shifting is re-labeling, no gates), and
/// the zero-remainder test driving the flag line.
WiringDiagram build_restoring_division(const ProblemSpec& spec);

/// Stage bookkeeping recovered from a built restoring diagram.
std::vector<StagePlan> stage_plans(const WiringDiagram& diagram);

/// Successive-subtraction divider: a subtract stage applied repeatedly until
/// its carry-out goes to 0, then a match test that flags when the remainder
/// bus equals the divisor's n-bit twos complement. Both fragments share one
/// width and layout {dividend, complement, adder_scratch, carries, flag}.
struct SsDivider {
    WiringDiagram subtract_stage;
    WiringDiagram match_test;
    uint32_t carry_line = 0;
    uint64_t iteration_cap = 0;  // 2^(n-1) + 1
};

SsDivider build_ss_divider(const ProblemSpec& spec);

/// One subtract pass followed by the match test, as a single diagram (the
/// exported netlist form of the successive-subtraction variant).
WiringDiagram ss_single_pass(const SsDivider& ss);

// ---------------------------------------------------------------------------
// Layout conventions of built diagrams
// ---------------------------------------------------------------------------

/// Problem size n recovered from a built diagram's layout.
uint32_t problem_size(const WiringDiagram& diagram);

/// Where the remainder sits after the diagram has run. For restoring
/// diagrams the partial bus has shifted down to the bottom of the
/// dividend/partial region; for successive subtraction it is the dividend
/// bus itself.
LineRange remainder_range(const WiringDiagram& diagram);

/// Register initialized for one (dividend, divisor) pair according to the
/// diagram's layout. Restoring: the two most significant dividend bits seed
/// the partial bus, the rest fill the dividend bus, the divisor bus gets d.
/// Successive subtraction: dividend bus <- N, complement bus <- 2^n - d.
Register init_division_register(const WiringDiagram& diagram, uint64_t dividend,
                                uint64_t divisor);

/// Quotient/remainder/flag read back from a finished register.
struct GateOutcome {
    bool has_quotient = false;
    uint64_t quotient = 0;
    uint64_t remainder = 0;
    bool flag = false;
};

GateOutcome read_outcome(const WiringDiagram& diagram, const Register& final_state);

/// Stage-by-stage trace of a gate-level run, in the same shape the arithmetic
/// reference produces, extracted from the register snapshots at the stage
/// checkpoints.
StageTrace gate_stage_trace(const WiringDiagram& diagram, const Register& input);

// ---------------------------------------------------------------------------
// Resource accounting
// ---------------------------------------------------------------------------

/// Line counts from the published accounting, evaluated exactly (not the
/// rounded 6n / 4n / 3n forms).
uint64_t paper_bits(uint32_t n, Variant variant);

/// Operation counts from the published accounting. Both restoring variants
/// share the one published operation sum; successive subtraction uses the
/// worst-case (8n+6) * 2^(n-1) + 3n total.
OpsCount paper_ops(uint32_t n, Variant variant);

/// The rounded reference forms quoted alongside the exact sums: BITS 6n-2 /
/// 4n / 3n+1 and OPS 11n^2 / 11n^2 / 11n * 2^(n-1).
uint64_t reference_bits(uint32_t n, Variant variant);
OpsCount reference_ops(uint32_t n, Variant variant);

struct ResourceReport {
    uint32_t n = 0;
    Variant variant = Variant::RestoringIrreversible;
    uint64_t bits_measured = 0;
    OpsCount ops_measured = 0;
    uint64_t bits_paper = 0;
    OpsCount ops_paper = 0;
};

/// Measured width/gate count of a built restoring diagram against the
/// published sums.
ResourceReport resource_stats(const WiringDiagram& diagram, uint32_t n, Variant variant);

/// Successive-subtraction accounting: measured ops are the worst-case
/// 2^(n-1) subtract passes plus one match test.
ResourceReport resource_stats(const SsDivider& ss, uint32_t n);

}  // namespace qap
