#include "qap/netlist_io.hpp"

#include <charconv>
#include <sstream>
#include <vector>

namespace qap {

namespace {

const std::string_view kMagic = "QAPNET";
const std::string_view kVersion = "1";

struct TokenLine {
    size_t number = 0;
    std::vector<std::string> tokens;
};

std::vector<TokenLine> tokenize(const std::string& text) {
    std::vector<TokenLine> lines;
    std::istringstream stream(text);
    std::string raw;
    size_t number = 0;
    while (std::getline(stream, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) {
            raw.erase(hash);
        }
        std::istringstream ls(raw);
        TokenLine line{number, {}};
        std::string token;
        while (ls >> token) line.tokens.push_back(token);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

uint64_t parse_number(const TokenLine& line, const std::string& token, uint64_t max) {
    uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw ParseError(line.number, token, "expected an unsigned integer");
    }
    if (value > max) {
        throw ParseError(line.number, token, "value out of range");
    }
    return value;
}

bool checkpoint_from_name(std::string_view name, Checkpoint& out) {
    for (Checkpoint cp : {Checkpoint::Alpha, Checkpoint::Beta1, Checkpoint::Beta2,
                          Checkpoint::Beta3, Checkpoint::Beta4, Checkpoint::Gamma}) {
        if (checkpoint_name(cp) == name) {
            out = cp;
            return true;
        }
    }
    return false;
}

bool kind_from_name(std::string_view name, GateKind& out) {
    for (GateKind kind : {GateKind::Not, GateKind::Cnot, GateKind::Toffoli, GateKind::Reset,
                          GateKind::Creset}) {
        if (gate_kind_name(kind) == name) {
            out = kind;
            return true;
        }
    }
    return false;
}

void expect_arity(const TokenLine& line, size_t want) {
    if (line.tokens.size() != want) {
        throw ParseError(line.number, line.tokens[0],
                         "expected " + std::to_string(want - 1) + " argument(s), got " +
                             std::to_string(line.tokens.size() - 1));
    }
}

}  // namespace

std::string serialize_netlist(const WiringDiagram& diagram) {
    std::ostringstream out;
    out << kMagic << ' ' << kVersion << '\n';
    out << "width " << diagram.width << '\n';
    for (const LayoutEntry& e : diagram.layout.entries()) {
        out << "label " << e.role << ' ' << e.range.start << ' ' << e.range.length << '\n';
    }
    for (const Mark& m : diagram.marks) {
        out << "mark " << m.stage << ':' << checkpoint_name(m.checkpoint) << ' ' << m.gate_index
            << '\n';
    }
    for (const Gate& g : diagram.gates) {
        out << "gate " << gate_kind_name(g.kind);
        int nc = gate_controls(g.kind);
        if (nc >= 1) out << ' ' << g.control0;
        if (nc >= 2) out << ' ' << g.control1;
        out << ' ' << g.target << '\n';
    }
    return out.str();
}

WiringDiagram parse_netlist(const std::string& text) {
    std::vector<TokenLine> lines = tokenize(text);
    if (lines.empty()) {
        throw ParseError(1, "", "empty netlist");
    }

    size_t at = 0;
    const TokenLine& header = lines[at];
    expect_arity(header, 2);
    if (header.tokens[0] != kMagic || header.tokens[1] != kVersion) {
        throw ParseError(header.number, header.tokens[0], "expected header 'QAPNET 1'");
    }
    ++at;

    if (at >= lines.size() || lines[at].tokens[0] != "width") {
        throw ParseError(at < lines.size() ? lines[at].number : header.number,
                         at < lines.size() ? lines[at].tokens[0] : "", "expected 'width <lines>'");
    }
    expect_arity(lines[at], 2);
    WiringDiagram diagram;
    diagram.width = static_cast<uint32_t>(parse_number(lines[at], lines[at].tokens[1], 1u << 24));
    ++at;

    for (; at < lines.size(); ++at) {
        const TokenLine& line = lines[at];
        const std::string& keyword = line.tokens[0];
        if (keyword == "label") {
            expect_arity(line, 4);
            if (!diagram.gates.empty() || !diagram.marks.empty()) {
                throw ParseError(line.number, keyword, "labels must precede marks and gates");
            }
            uint32_t start =
                static_cast<uint32_t>(parse_number(line, line.tokens[2], diagram.width));
            uint32_t length =
                static_cast<uint32_t>(parse_number(line, line.tokens[3], diagram.width));
            if (length < 1 || start + length > diagram.width) {
                throw ParseError(line.number, line.tokens[2], "label range outside diagram width");
            }
            try {
                diagram.layout.add(line.tokens[1], LineRange{start, length});
            } catch (const std::invalid_argument& err) {
                throw ParseError(line.number, line.tokens[1], err.what());
            }
        } else if (keyword == "mark") {
            expect_arity(line, 3);
            if (!diagram.gates.empty()) {
                throw ParseError(line.number, keyword, "marks must precede gates");
            }
            const std::string& spec = line.tokens[1];
            auto colon = spec.find(':');
            if (colon == std::string::npos) {
                throw ParseError(line.number, spec, "expected '<stage>:<checkpoint>'");
            }
            Mark mark;
            mark.stage =
                static_cast<uint32_t>(parse_number(line, spec.substr(0, colon), 1u << 24));
            if (!checkpoint_from_name(spec.substr(colon + 1), mark.checkpoint)) {
                throw ParseError(line.number, spec.substr(colon + 1), "unknown checkpoint");
            }
            mark.gate_index = parse_number(line, line.tokens[2], uint64_t{1} << 48);
            diagram.marks.push_back(mark);
        } else if (keyword == "gate") {
            if (line.tokens.size() < 2) {
                throw ParseError(line.number, keyword, "expected a gate kind");
            }
            GateKind kind;
            if (!kind_from_name(line.tokens[1], kind)) {
                throw ParseError(line.number, line.tokens[1], "unknown gate kind");
            }
            int nc = gate_controls(kind);
            expect_arity(line, 3 + static_cast<size_t>(nc));
            uint32_t args[3] = {0, 0, 0};
            for (int i = 0; i <= nc; ++i) {
                args[i] = static_cast<uint32_t>(
                    parse_number(line, line.tokens[2 + static_cast<size_t>(i)], UINT32_MAX));
                if (args[i] >= diagram.width) {
                    throw ParseError(line.number, line.tokens[2 + static_cast<size_t>(i)],
                                     "line index outside diagram width");
                }
            }
            try {
                switch (kind) {
                    case GateKind::Not:
                        diagram.gates.push_back(Gate::not_gate(args[0]));
                        break;
                    case GateKind::Cnot:
                        diagram.gates.push_back(Gate::cnot(args[0], args[1]));
                        break;
                    case GateKind::Toffoli:
                        diagram.gates.push_back(Gate::toffoli(args[0], args[1], args[2]));
                        break;
                    case GateKind::Reset:
                        diagram.gates.push_back(Gate::reset(args[0]));
                        break;
                    case GateKind::Creset:
                        diagram.gates.push_back(Gate::creset(args[0], args[1]));
                        break;
                }
            } catch (const std::invalid_argument& err) {
                throw ParseError(line.number, line.tokens[2], err.what());
            }
        } else {
            throw ParseError(line.number, keyword, "unknown directive");
        }
    }

    for (const Mark& m : diagram.marks) {
        if (m.gate_index > diagram.gates.size()) {
            throw ParseError(lines.back().number, std::to_string(m.gate_index),
                             "mark gate index past end of gate list");
        }
    }
    diagram.validate();
    return diagram;
}

}  // namespace qap
