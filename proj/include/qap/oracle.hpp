#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace qap {

/// Result of one full division, in plain integers.
struct DivisionOutcome {
    uint64_t quotient = 0;
    uint64_t remainder = 0;
    bool flag = false;

    bool operator==(const DivisionOutcome&) const = default;
};

/// One restoring-division stage as the arithmetic reference sees it.
struct StageRecord {
    uint64_t partial_before = 0;  // partial dividend entering the stage
    int carry_beta1 = 0;          // carry out of the trial subtraction
    bool restored = false;        // divisor added back (carry was 0)
    int quotient_bit = 0;
    uint64_t partial_after = 0;   // after the shift; final stage: the remainder

    bool operator==(const StageRecord&) const = default;
};

struct StageTrace {
    uint32_t n = 0;
    uint64_t dividend = 0;
    uint64_t divisor = 0;
    std::vector<StageRecord> stages;

    bool operator==(const StageTrace&) const = default;
};

// The functions below are deliberately plain integer arithmetic with no
// shared code with the circuit builders, so they can serve as an independent
// witness for gate-level results.

/// Restoring division of the n-bit dividend N by d: start from the two most
/// significant dividend bits, then per stage subtract, restore on a 0 carry,
/// record the carry as the quotient bit, and shift in the next dividend bit.
/// Requires n even, 4 <= n <= 64, 2 <= d < 2^(n/2), N < 2^n.
std::pair<DivisionOutcome, StageTrace> oracle_restoring_division(uint64_t N, uint64_t d,
                                                                 uint32_t n);

struct SsOracleResult {
    bool flag = false;
    uint64_t iterations = 0;  // subtractions until the carry drops to 0, inclusive

    bool operator==(const SsOracleResult&) const = default;
};

/// Successive subtraction: subtract d until the borrowless carry goes to 0.
/// flag is exact divisibility; iterations = floor(N/d) + 1.
SsOracleResult oracle_ss(uint64_t N, uint64_t d, uint32_t n);

/// Exact trial division: all divisors of N in [2, floor(sqrt(N))], ascending.
std::vector<uint64_t> brute_force_divisors(uint64_t N);

uint64_t isqrt(uint64_t n);

/// Renders the stage trace as an MSB-first tableau; the carry out of each
/// addition is shown as a parenthesized bit in front of the sum.
std::string format_stage_trace(const StageTrace& trace);

/// Per-subtraction tableau for the successive-subtraction route.
std::string format_ss_trace(uint64_t N, uint64_t d, uint32_t n);

}  // namespace qap
