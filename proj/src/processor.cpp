#include "qap/processor.hpp"

#include <bit>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "qap/oracle.hpp"

namespace qap {

namespace {

constexpr uint32_t kMaxBankBits = 20;  // 1M registers; desk scale

// Runs fn(begin, end) over [0, total) split into at most `jobs` contiguous
// chunks. Chunk boundaries depend only on total and jobs, and each chunk
// writes disjoint state, so results never depend on scheduling.
template <typename Fn>
void parallel_chunks(uint64_t total, unsigned jobs, Fn&& fn) {
    if (total == 0) return;
    jobs = std::max(1u, jobs);
    uint64_t chunks = std::min<uint64_t>(jobs, total);
    if (chunks <= 1) {
        fn(uint64_t{0}, total);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(chunks);
    uint64_t per = (total + chunks - 1) / chunks;
    for (uint64_t c = 0; c < chunks; ++c) {
        uint64_t begin = c * per;
        uint64_t end = std::min(total, begin + per);
        if (begin >= end) break;
        workers.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& worker : workers) worker.join();
}

}  // namespace

void BankSpec::validate() const {
    if (dividend < 2) {
        throw std::invalid_argument("dividend must be at least 2");
    }
    if (n < 4 || n > 64 || n % 2) {
        throw std::invalid_argument("bank width n must be even and in [4, 64]");
    }
    if (m != n / 2) {
        throw std::invalid_argument("divisor subregister width must be n/2");
    }
    if (n < 64 && (dividend >> n)) {
        throw std::invalid_argument("dividend does not fit in " + std::to_string(n) + " bits");
    }
    if (m > kMaxBankBits) {
        throw std::invalid_argument("bank of 2^" + std::to_string(m) +
                                    " registers exceeds the supported size (m <= " +
                                    std::to_string(kMaxBankBits) + ")");
    }
}

uint32_t padded_problem_size(uint64_t N) {
    if (N < 2) {
        throw std::invalid_argument("N must be at least 2");
    }
    uint32_t bits = std::bit_width(N);
    uint32_t n = bits + (bits % 2);
    return std::max(n, 4u);
}

BankSpec make_bank_spec(uint64_t N, BankMode mode) {
    BankSpec spec;
    spec.dividend = N;
    spec.n = padded_problem_size(N);
    spec.m = spec.n / 2;
    spec.mode = mode;
    spec.validate();
    return spec;
}

std::vector<uint64_t> primes_below_power(uint32_t m) {
    if (m > kMaxBankBits) {
        throw std::invalid_argument("sieve limit too large");
    }
    uint64_t limit = uint64_t{1} << m;
    std::vector<uint8_t> composite(limit, 0);
    std::vector<uint64_t> primes;
    for (uint64_t p = 2; p < limit; ++p) {
        if (composite[p]) continue;
        primes.push_back(p);
        for (uint64_t q = p * p; q < limit; q += p) composite[q] = 1;
    }
    return primes;
}

RegisterBank init_bank(const BankSpec& spec, const WiringDiagram& diagram) {
    spec.validate();
    if (problem_size(diagram) != spec.n) {
        throw std::invalid_argument("diagram problem size does not match bank spec");
    }
    uint64_t count = spec.register_count();
    RegisterBank bank;
    bank.spec = spec;
    bank.registers.reserve(count);
    bank.valid.assign(count, 0);
    for (uint64_t d = 0; d < count; ++d) {
        bank.registers.push_back(init_division_register(diagram, spec.dividend, d));
        bank.valid[d] = d >= 2 ? 1 : 0;
    }
    if (spec.mode == BankMode::PrimesOnly) {
        std::fill(bank.valid.begin(), bank.valid.end(), 0);
        for (uint64_t p : primes_below_power(spec.m)) bank.valid[p] = 1;
    }
    return bank;
}

RegisterBank run_bank(const RegisterBank& bank, const WiringDiagram& diagram, unsigned jobs) {
    const uint64_t count = bank.registers.size();
    const uint32_t width = diagram.width;
    for (const Register& reg : bank.registers) {
        if (reg.width() != width) {
            throw std::invalid_argument("register width does not match diagram width");
        }
    }
    RegisterBank out;
    out.spec = bank.spec;
    out.valid = bank.valid;
    out.registers.assign(count, Register(width));
    if (count == 0) return out;

    // Bit-sliced lockstep: word w, line l at slices[w * width + l], one bit
    // per register lane.
    const uint64_t words = (count + 63) / 64;
    std::vector<uint64_t> slices(words * width, 0);
    for (uint64_t r = 0; r < count; ++r) {
        const uint8_t* bits = bank.registers[r].data();
        uint64_t* row = slices.data() + (r / 64) * width;
        const uint64_t lane = uint64_t{1} << (r % 64);
        for (uint32_t l = 0; l < width; ++l) {
            if (bits[l]) row[l] |= lane;
        }
    }

    parallel_chunks(words, resolve_jobs(jobs), [&](uint64_t begin, uint64_t end) {
        for (uint64_t w = begin; w < end; ++w) {
            uint64_t* row = slices.data() + w * width;
            for (const Gate& g : diagram.gates) {
                switch (g.kind) {
                    case GateKind::Not:
                        row[g.target] = ~row[g.target];
                        break;
                    case GateKind::Cnot:
                        row[g.target] ^= row[g.control0];
                        break;
                    case GateKind::Toffoli:
                        row[g.target] ^= row[g.control0] & row[g.control1];
                        break;
                    case GateKind::Reset:
                        row[g.target] = 0;
                        break;
                    case GateKind::Creset:
                        row[g.target] &= ~row[g.control0];
                        break;
                }
            }
        }
    });

    for (uint64_t r = 0; r < count; ++r) {
        uint8_t* bits = out.registers[r].data();
        const uint64_t* row = slices.data() + (r / 64) * width;
        const uint32_t lane = static_cast<uint32_t>(r % 64);
        for (uint32_t l = 0; l < width; ++l) {
            bits[l] = static_cast<uint8_t>((row[l] >> lane) & 1u);
        }
    }
    return out;
}

SsRunResult run_ss_register(const SsDivider& ss, const Register& input) {
    if (input.width() != ss.subtract_stage.width) {
        throw std::invalid_argument("register width does not match divider width");
    }
    SsRunResult result{input, 0, false};
    uint8_t* bits = result.reg.data();
    while (result.iterations < ss.iteration_cap) {
        for (const Gate& g : ss.subtract_stage.gates) apply_gate_in_place(bits, g);
        ++result.iterations;
        if (bits[ss.carry_line] == 0) {
            for (const Gate& g : ss.match_test.gates) apply_gate_in_place(bits, g);
            result.tested = true;
            break;
        }
    }
    return result;
}

RegisterBank run_bank_ss(const RegisterBank& bank, const SsDivider& ss, unsigned jobs) {
    RegisterBank out;
    out.spec = bank.spec;
    out.valid = bank.valid;
    out.registers.assign(bank.registers.size(), Register(ss.subtract_stage.width));
    parallel_chunks(bank.registers.size(), resolve_jobs(jobs), [&](uint64_t begin, uint64_t end) {
        for (uint64_t r = begin; r < end; ++r) {
            out.registers[r] = run_ss_register(ss, bank.registers[r]).reg;
        }
    });
    return out;
}

DivisorReport collect_divisors(const RegisterBank& bank, const WiringDiagram& diagram,
                               bool filter_sqrt) {
    const uint32_t flag_line = diagram.layout.at("flag").start;
    const uint64_t root = isqrt(bank.spec.dividend);
    DivisorReport report;
    report.dividend = bank.spec.dividend;
    report.filter_sqrt = filter_sqrt;
    for (uint64_t d = 0; d < bank.registers.size(); ++d) {
        if (!bank.valid[d]) continue;
        if (!bank.registers[d].bit(flag_line)) continue;
        if (bank.spec.dividend % d != 0) {
            throw std::logic_error("flag set for non-divisor " + std::to_string(d) + " of " +
                                   std::to_string(bank.spec.dividend) +
                                   ": builder invariant breach");
        }
        if (filter_sqrt && d > root) continue;
        report.divisors.push_back(d);
        report.cofactors.push_back(bank.spec.dividend / d);
    }
    return report;
}

namespace {

std::mutex cache_mutex;
std::map<std::pair<uint32_t, Variant>, WiringDiagram> division_cache;
std::map<uint32_t, SsDivider> ss_cache;

}  // namespace

const WiringDiagram& cached_division_diagram(uint32_t n, Variant variant) {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto key = std::make_pair(n, variant);
    auto it = division_cache.find(key);
    if (it == division_cache.end()) {
        it = division_cache.emplace(key, build_restoring_division(ProblemSpec{n, variant})).first;
    }
    return it->second;
}

const SsDivider& cached_ss_divider(uint32_t n) {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = ss_cache.find(n);
    if (it == ss_cache.end()) {
        it = ss_cache
                 .emplace(n, build_ss_divider(ProblemSpec{n, Variant::SuccessiveSubtraction}))
                 .first;
    }
    return it->second;
}

DivisorReport find_divisors(uint64_t N, const FindOptions& options) {
    BankSpec spec = make_bank_spec(N, options.mode);
    if (options.variant == Variant::SuccessiveSubtraction) {
        const SsDivider& ss = cached_ss_divider(spec.n);
        RegisterBank bank = init_bank(spec, ss.subtract_stage);
        bank = run_bank_ss(bank, ss, options.jobs);
        return collect_divisors(bank, ss.subtract_stage, options.filter_sqrt);
    }
    const WiringDiagram& diagram = cached_division_diagram(spec.n, options.variant);
    RegisterBank bank = init_bank(spec, diagram);
    bank = run_bank(bank, diagram, options.jobs);
    return collect_divisors(bank, diagram, options.filter_sqrt);
}

unsigned resolve_jobs(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("QAP_JOBS")) {
        char* end = nullptr;
        long value = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && value > 0) {
            return static_cast<unsigned>(value);
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

}  // namespace qap
