#pragma once

#include <stdexcept>
#include <string>

#include "qap/netlist.hpp"

namespace qap {

/// Reported for the first malformed entry, with its 1-based line number and
/// the offending token.
class ParseError : public std::runtime_error {
public:
    ParseError(size_t line, std::string token, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message + " (at '" + token +
                             "')"),
          line_(line),
          token_(std::move(token)) {}

    size_t line() const { return line_; }
    const std::string& token() const { return token_; }

private:
    size_t line_;
    std::string token_;
};

/// Text form of a wiring diagram (UTF-8, line oriented):
///
///   QAPNET 1
///   width <lines>
///   label <role> <start> <length>
///   mark <stage>:<checkpoint> <gate-index>
///   gate NOT <t> | gate CNOT <c> <t> | gate TOFFOLI <c1> <c2> <t>
///   gate RESET <t> | gate CRESET <c> <t>
///
/// '#' starts a comment, blank lines are ignored. serialize emits canonical
/// text: serialize(parse(serialize(d))) is byte-identical to serialize(d).
std::string serialize_netlist(const WiringDiagram& diagram);

WiringDiagram parse_netlist(const std::string& text);

}  // namespace qap
