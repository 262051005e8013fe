#include "qap/oracle.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qap {

namespace {

void check_division_args(uint64_t N, uint64_t d, uint32_t n) {
    if (n < 4 || n > 64 || n % 2 != 0) {
        throw std::invalid_argument("n must be even and in [4, 64], got " + std::to_string(n));
    }
    if (d < 2) {
        throw std::invalid_argument("divisor must be at least 2, got " + std::to_string(d));
    }
    if (d >> (n / 2)) {
        throw std::invalid_argument("divisor " + std::to_string(d) + " needs more than n/2 bits");
    }
    if (n < 64 && N >> n) {
        throw std::invalid_argument("dividend " + std::to_string(N) + " needs more than n bits");
    }
}

std::string binary(uint64_t value, uint32_t width) {
    std::string s(width, '0');
    for (uint32_t i = 0; i < width; ++i) {
        if ((value >> i) & 1u) s[width - 1 - i] = '1';
    }
    return s;
}

}  // namespace

std::pair<DivisionOutcome, StageTrace> oracle_restoring_division(uint64_t N, uint64_t d,
                                                                 uint32_t n) {
    check_division_args(N, d, n);
    StageTrace trace{n, N, d, {}};
    // Stage 0 starts from the two most significant dividend bits.
    uint64_t partial = (N >> (n - 2)) & 3u;
    uint64_t quotient = 0;
    for (uint32_t j = 0; j + 1 < n; ++j) {
        StageRecord rec;
        rec.partial_before = partial;
        int carry = partial >= d ? 1 : 0;
        if (carry) partial -= d;
        rec.carry_beta1 = carry;
        rec.restored = carry == 0;
        rec.quotient_bit = carry;
        quotient = (quotient << 1) | static_cast<uint64_t>(carry);
        if (j + 2 < n) {
            partial = (partial << 1) | ((N >> (n - 3 - j)) & 1u);
        }
        rec.partial_after = partial;
        trace.stages.push_back(rec);
    }
    DivisionOutcome outcome{quotient, partial, partial == 0};
    return {outcome, trace};
}

SsOracleResult oracle_ss(uint64_t N, uint64_t d, uint32_t n) {
    check_division_args(N, d, n);
    // One subtraction per full divisor removed, plus the one whose carry
    // drops to 0.
    return SsOracleResult{N % d == 0, N / d + 1};
}

std::vector<uint64_t> brute_force_divisors(uint64_t N) {
    if (N < 2) {
        throw std::invalid_argument("N must be at least 2");
    }
    std::vector<uint64_t> divisors;
    uint64_t root = isqrt(N);
    for (uint64_t d = 2; d <= root; ++d) {
        if (N % d == 0) divisors.push_back(d);
    }
    return divisors;
}

uint64_t isqrt(uint64_t n) {
    if (n == 0) return 0;
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    auto square = [](uint64_t v) { return static_cast<unsigned __int128>(v) * v; };
    while (r > 0 && square(r) > n) --r;
    while (square(r + 1) <= n) ++r;
    return r;
}

std::string format_stage_trace(const StageTrace& trace) {
    uint32_t k = trace.n / 2 + 1;
    uint64_t complement = ((uint64_t{1} << k) - trace.divisor) & ((uint64_t{1} << k) - 1);
    std::ostringstream out;
    out << "restoring " << trace.dividend << " / " << trace.divisor << "  (n = " << trace.n
        << ", divisor " << binary(trace.divisor, k) << ", complement " << binary(complement, k)
        << ")\n";
    uint64_t quotient = 0;
    for (size_t j = 0; j < trace.stages.size(); ++j) {
        const StageRecord& s = trace.stages[j];
        uint64_t mask = (uint64_t{1} << k) - 1;
        uint64_t sub = (s.partial_before + complement) & mask;
        out << "  stage " << j + 1 << ":  " << binary(s.partial_before, k) << " + "
            << binary(complement, k) << " -> (" << s.carry_beta1 << ") " << binary(sub, k)
            << "   quotient bit " << s.quotient_bit << "\n";
        if (s.restored) {
            uint64_t restored = (sub + trace.divisor) & mask;
            out << "  restore:  " << binary(sub, k) << " + " << binary(trace.divisor, k)
                << " -> (1) " << binary(restored, k) << "\n";
        }
        quotient = (quotient << 1) | static_cast<uint64_t>(s.quotient_bit);
        if (j + 1 < trace.stages.size()) {
            out << "  bring down next dividend bit -> " << binary(s.partial_after, k) << "\n";
        }
    }
    const StageRecord& last = trace.stages.back();
    out << "quotient " << binary(quotient, trace.n - 1) << " = " << quotient << ", remainder "
        << binary(last.partial_after, trace.n / 2) << " = " << last.partial_after << ", flag "
        << (last.partial_after == 0 ? 1 : 0) << "\n";
    return out.str();
}

std::string format_ss_trace(uint64_t N, uint64_t d, uint32_t n) {
    check_division_args(N, d, n);
    uint64_t mask = n == 64 ? ~uint64_t{0} : (uint64_t{1} << n) - 1;
    uint64_t complement = (~d + 1) & mask;
    std::ostringstream out;
    out << "ss " << N << " / " << d << "  (n = " << n << ", complement " << binary(complement, n)
        << ")\n";
    uint64_t bus = N;
    uint64_t iteration = 0;
    while (true) {
        ++iteration;
        unsigned __int128 sum = static_cast<unsigned __int128>(bus) + complement;
        int carry = sum >> n ? 1 : 0;
        bus = static_cast<uint64_t>(sum) & mask;
        out << "  sub " << iteration << ":  -> (" << carry << ") " << binary(bus, n) << "\n";
        if (!carry) break;
    }
    bool match = bus == complement;
    out << "remainder bus " << (match ? "matches" : "does not match") << " the complement; flag "
        << (match ? 1 : 0) << " after " << iteration << " subtractions\n";
    return out.str();
}

}  // namespace qap
