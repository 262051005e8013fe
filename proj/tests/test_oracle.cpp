#include <doctest.h>

#include <stdexcept>

#include <random>

#include "qap/oracle.hpp"

using namespace qap;

TEST_CASE("restoring oracle reproduces the 15/3 worked example") {
    auto [outcome, trace] = oracle_restoring_division(15, 3, 4);
    CHECK(outcome.quotient == 5);
    CHECK(outcome.remainder == 0);
    CHECK(outcome.flag);

    REQUIRE(trace.stages.size() == 3);
    CHECK(trace.stages[0].partial_before == 3);  // 011
    CHECK(trace.stages[0].carry_beta1 == 1);
    CHECK_FALSE(trace.stages[0].restored);
    CHECK(trace.stages[1].carry_beta1 == 0);
    CHECK(trace.stages[1].restored);
    CHECK(trace.stages[1].quotient_bit == 0);
    CHECK(trace.stages[2].carry_beta1 == 1);
    CHECK(trace.stages[2].partial_after == 0);
}

TEST_CASE("restoring oracle basics") {
    auto [outcome, trace] = oracle_restoring_division(15, 2, 4);
    CHECK(outcome.quotient == 7);
    CHECK(outcome.remainder == 1);
    CHECK_FALSE(outcome.flag);

    CHECK_THROWS_AS(oracle_restoring_division(5, 1, 4), std::invalid_argument);
    CHECK_THROWS_AS(oracle_restoring_division(5, 0, 4), std::invalid_argument);
    CHECK_THROWS_AS(oracle_restoring_division(5, 3, 5), std::invalid_argument);
    CHECK_THROWS_AS(oracle_restoring_division(5, 4, 4), std::invalid_argument);
    CHECK_THROWS_AS(oracle_restoring_division(16, 3, 4), std::invalid_argument);
}

TEST_CASE("restoring oracle satisfies the euclidean identity") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 2000; ++trial) {
        uint32_t n = 12;
        uint64_t N = rng() % (uint64_t{1} << n);
        uint64_t d = 2 + rng() % ((uint64_t{1} << (n / 2)) - 2);
        auto [outcome, trace] = oracle_restoring_division(N, d, n);
        CHECK(outcome.quotient == N / d);
        CHECK(outcome.remainder == N % d);
        CHECK(outcome.flag == (N % d == 0));
        CHECK(outcome.quotient * d + outcome.remainder == N);
        CHECK(outcome.remainder < d);
        // quotient bits concatenated MSB-first equal the quotient
        uint64_t q = 0;
        for (const StageRecord& s : trace.stages) {
            q = (q << 1) | static_cast<uint64_t>(s.quotient_bit);
        }
        CHECK(q == outcome.quotient);
    }
}

TEST_CASE("ss oracle counts the terminating subtraction") {
    CHECK(oracle_ss(6, 3, 4) == SsOracleResult{true, 3});
    CHECK(oracle_ss(7, 3, 4) == SsOracleResult{false, 3});
    CHECK(oracle_ss(1023, 2, 10) == SsOracleResult{false, 512});
    CHECK(oracle_ss(1022, 2, 10) == SsOracleResult{true, 512});
    CHECK_THROWS_AS(oracle_ss(6, 1, 4), std::invalid_argument);
}

TEST_CASE("ss oracle flag equals divisibility") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 500; ++trial) {
        uint32_t n = 10;
        uint64_t N = rng() % (uint64_t{1} << n);
        uint64_t d = 2 + rng() % ((uint64_t{1} << (n / 2)) - 2);
        SsOracleResult r = oracle_ss(N, d, n);
        CHECK(r.flag == (N % d == 0));
        CHECK(r.iterations == N / d + 1);
    }
}

TEST_CASE("brute force divisors") {
    CHECK(brute_force_divisors(91) == std::vector<uint64_t>{7});
    CHECK(brute_force_divisors(13).empty());
    CHECK(brute_force_divisors(36) == std::vector<uint64_t>{2, 3, 4, 6});
    CHECK(brute_force_divisors(2).empty());
    CHECK_THROWS_AS(brute_force_divisors(1), std::invalid_argument);
}

TEST_CASE("isqrt is exact at perfect-square boundaries") {
    CHECK(isqrt(0) == 0);
    CHECK(isqrt(1) == 1);
    CHECK(isqrt(15) == 3);
    CHECK(isqrt(16) == 4);
    CHECK(isqrt(17) == 4);
    CHECK(isqrt((uint64_t{1} << 32) - 1) == 65535);
    CHECK(isqrt(uint64_t{1} << 32) == 65536);
}

TEST_CASE("trace tableau renders carries in parentheses") {
    auto [outcome, trace] = oracle_restoring_division(15, 3, 4);
    std::string text = format_stage_trace(trace);
    CHECK(text.find("011 + 101 -> (1) 000") != std::string::npos);
    CHECK(text.find("restore") != std::string::npos);
    CHECK(text.find("quotient 101 = 5") != std::string::npos);

    std::string ss_text = format_ss_trace(6, 3, 4);
    CHECK(ss_text.find("complement 1101") != std::string::npos);
    CHECK(ss_text.find("(0) 1101") != std::string::npos);
    CHECK(ss_text.find("flag 1") != std::string::npos);
}
