#include "qap/register.hpp"

#include <stdexcept>
#include <string>

namespace qap {

namespace {

void check_range(const Register& reg, LineRange range) {
    if (range.length < 1) {
        throw std::invalid_argument("bus range must have length >= 1");
    }
    if (range.length > 64) {
        throw std::invalid_argument("bus range longer than 64 lines");
    }
    if (static_cast<uint64_t>(range.start) + range.length > reg.width()) {
        throw std::out_of_range("bus range [" + std::to_string(range.start) + ", +" +
                                std::to_string(range.length) + ") exceeds register width " +
                                std::to_string(reg.width()));
    }
}

}  // namespace

uint8_t Register::bit(uint32_t line) const {
    if (line >= bits_.size()) {
        throw std::out_of_range("line " + std::to_string(line) + " out of register of width " +
                                std::to_string(bits_.size()));
    }
    return bits_[line];
}

void Register::set_bit(uint32_t line, uint8_t value) {
    if (line >= bits_.size()) {
        throw std::out_of_range("line " + std::to_string(line) + " out of register of width " +
                                std::to_string(bits_.size()));
    }
    bits_[line] = value ? 1 : 0;
}

Register register_from_value(uint64_t value, uint32_t width) {
    if (width < 64 && value >> width) {
        throw std::invalid_argument("value " + std::to_string(value) + " does not fit in " +
                                    std::to_string(width) + " lines");
    }
    Register reg(width);
    for (uint32_t i = 0; i < width && i < 64; ++i) {
        reg.set_bit(i, static_cast<uint8_t>((value >> i) & 1u));
    }
    return reg;
}

uint64_t read_bus(const Register& reg, LineRange range) {
    check_range(reg, range);
    uint64_t value = 0;
    for (uint32_t i = 0; i < range.length; ++i) {
        value |= static_cast<uint64_t>(reg.bit(range.start + i)) << i;
    }
    return value;
}

Register write_bus(const Register& reg, LineRange range, uint64_t value) {
    check_range(reg, range);
    if (range.length < 64 && value >> range.length) {
        throw std::invalid_argument("value " + std::to_string(value) + " does not fit in bus of " +
                                    std::to_string(range.length) + " lines");
    }
    Register out = reg;
    for (uint32_t i = 0; i < range.length; ++i) {
        out.set_bit(range.start + i, static_cast<uint8_t>((value >> i) & 1u));
    }
    return out;
}

}  // namespace qap
