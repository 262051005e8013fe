#pragma once

#include <cstdint>
#include <vector>

#include "qap/builders.hpp"
#include "qap/netlist.hpp"
#include "qap/register.hpp"

namespace qap {

enum class BankMode : uint8_t { AllIntegers, PrimesOnly };

/// Geometry of a divisor bank: one register per m-bit candidate pattern, so
/// 2^m registers with the candidate value doubling as the register index.
struct BankSpec {
    uint64_t dividend = 0;
    uint32_t n = 4;   // padded even dividend width
    uint32_t m = 2;   // divisor subregister width, n/2
    BankMode mode = BankMode::AllIntegers;

    uint64_t register_count() const { return uint64_t{1} << m; }

    void validate() const;
};

/// Smallest even n >= 4 whose width holds N.
uint32_t padded_problem_size(uint64_t N);

BankSpec make_bank_spec(uint64_t N, BankMode mode = BankMode::AllIntegers);

/// The lockstep register file: registers[d] belongs to candidate divisor d.
/// valid[d] is false for d in {0, 1} and, in primes-only mode, for every
/// composite candidate; masked registers still execute, their results just
/// never reach a report.
struct RegisterBank {
    BankSpec spec;
    std::vector<Register> registers;
    std::vector<uint8_t> valid;

    uint64_t divisor_of(uint64_t index) const { return index; }
};

/// One register per candidate divisor: the dividend bits and the candidate
/// pattern per the diagram's layout, everything else zero.
RegisterBank init_bank(const BankSpec& spec, const WiringDiagram& diagram);

/// Runs the diagram over every register in lockstep (bit-sliced over 64-lane
/// words internally). The result is bit-identical for every jobs value and
/// register visitation order. jobs = 0 picks QAP_JOBS or the hardware
/// concurrency.
RegisterBank run_bank(const RegisterBank& bank, const WiringDiagram& diagram, unsigned jobs = 0);

struct SsRunResult {
    Register reg;
    uint64_t iterations = 0;
    bool tested = false;  // match test fired (carry dropped before the cap)
};

/// Drives one register through subtract passes until the carry-out drops to
/// 0, then fires the match test. Gives up (tested = false) after
/// 2^(n-1) + 1 passes; only the masked candidates d in {0, 1} can hit that.
SsRunResult run_ss_register(const SsDivider& ss, const Register& input);

/// Per-register successive-subtraction drive of the whole bank. The
/// iteration count is data dependent, so this runs register-at-a-time rather
/// than in lockstep; results are still independent of jobs.
RegisterBank run_bank_ss(const RegisterBank& bank, const SsDivider& ss, unsigned jobs = 0);

struct DivisorReport {
    uint64_t dividend = 0;
    bool filter_sqrt = true;
    std::vector<uint64_t> divisors;   // ascending
    std::vector<uint64_t> cofactors;  // dividend / divisors[i]

    bool operator==(const DivisorReport&) const = default;
};

/// Reads every valid register's flag line and gathers the flagged divisors,
/// ascending, with cofactors. Every reported divisor is re-checked
/// arithmetically; a flag on a non-divisor is an internal invariant breach
/// and throws. filter_sqrt drops divisors above floor(sqrt(N)).
DivisorReport collect_divisors(const RegisterBank& bank, const WiringDiagram& diagram,
                               bool filter_sqrt = true);

struct FindOptions {
    Variant variant = Variant::RestoringIrreversible;
    BankMode mode = BankMode::AllIntegers;
    bool filter_sqrt = true;
    unsigned jobs = 0;
};

/// Pads N to an even width, builds (or reuses) the variant's diagram,
/// initializes the bank, runs it, and collects the flagged divisors.
DivisorReport find_divisors(uint64_t N, const FindOptions& options = {});

/// Process-wide cache of built diagrams, keyed by (n, variant).
const WiringDiagram& cached_division_diagram(uint32_t n, Variant variant);
const SsDivider& cached_ss_divider(uint32_t n);

/// Primes below 2^m, by sieve. Initialization data for primes-only banks.
std::vector<uint64_t> primes_below_power(uint32_t m);

/// Worker-count resolution: explicit value, else QAP_JOBS, else the hardware
/// concurrency (at least 1).
unsigned resolve_jobs(unsigned requested);

}  // namespace qap
