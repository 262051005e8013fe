#pragma once

#include <cstdint>
#include <vector>

namespace qap {

/// A contiguous LSB-first group of lines inside a register ("bus").
struct LineRange {
    uint32_t start = 0;
    uint32_t length = 0;

    bool operator==(const LineRange&) const = default;
};

/// Fixed-width bit register. Width never changes after construction; the
/// gate/diagram operations treat registers as values and return new ones.
class Register {
public:
    Register() = default;
    explicit Register(uint32_t width) : bits_(width, 0) {}

    uint32_t width() const { return static_cast<uint32_t>(bits_.size()); }

    uint8_t bit(uint32_t line) const;
    void set_bit(uint32_t line, uint8_t value);

    bool operator==(const Register&) const = default;

    const uint8_t* data() const { return bits_.data(); }
    uint8_t* data() { return bits_.data(); }

private:
    std::vector<uint8_t> bits_;
};

/// Builds a register of `width` lines holding `value`, bit i of the value on
/// line i. Throws std::invalid_argument if the value does not fit.
Register register_from_value(uint64_t value, uint32_t width);

/// Reads the bus as an unsigned integer (line start+i contributes 2^i).
/// The range must lie inside the register and be at most 64 lines long.
uint64_t read_bus(const Register& reg, LineRange range);

/// Returns a copy of `reg` with the bus set to `value`; lines outside the
/// range are untouched.
Register write_bus(const Register& reg, LineRange range, uint64_t value);

}  // namespace qap
