#include "qap/netlist.hpp"

#include <algorithm>
#include <stdexcept>

namespace qap {

namespace {

void require_distinct(std::initializer_list<uint32_t> lines) {
    for (auto it = lines.begin(); it != lines.end(); ++it) {
        for (auto jt = it + 1; jt != lines.end(); ++jt) {
            if (*it == *jt) {
                throw std::invalid_argument("gate line indices must be pairwise distinct (line " +
                                            std::to_string(*it) + " repeated)");
            }
        }
    }
}

}  // namespace

int gate_controls(GateKind kind) {
    switch (kind) {
        case GateKind::Not:
        case GateKind::Reset:
            return 0;
        case GateKind::Cnot:
        case GateKind::Creset:
            return 1;
        case GateKind::Toffoli:
            return 2;
    }
    return 0;
}

std::string_view gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::Not: return "NOT";
        case GateKind::Cnot: return "CNOT";
        case GateKind::Toffoli: return "TOFFOLI";
        case GateKind::Reset: return "RESET";
        case GateKind::Creset: return "CRESET";
    }
    return "?";
}

Gate Gate::not_gate(uint32_t target) { return Gate{GateKind::Not, target, 0, 0}; }

Gate Gate::cnot(uint32_t control, uint32_t target) {
    require_distinct({control, target});
    return Gate{GateKind::Cnot, target, control, 0};
}

Gate Gate::toffoli(uint32_t control0, uint32_t control1, uint32_t target) {
    require_distinct({control0, control1, target});
    return Gate{GateKind::Toffoli, target, control0, control1};
}

Gate Gate::reset(uint32_t target) { return Gate{GateKind::Reset, target, 0, 0}; }

Gate Gate::creset(uint32_t control, uint32_t target) {
    require_distinct({control, target});
    return Gate{GateKind::Creset, target, control, 0};
}

uint32_t Gate::max_line() const {
    uint32_t m = target;
    int nc = gate_controls(kind);
    if (nc >= 1) m = std::max(m, control0);
    if (nc >= 2) m = std::max(m, control1);
    return m;
}

std::string_view checkpoint_name(Checkpoint cp) {
    switch (cp) {
        case Checkpoint::Alpha: return "alpha";
        case Checkpoint::Beta1: return "beta1";
        case Checkpoint::Beta2: return "beta2";
        case Checkpoint::Beta3: return "beta3";
        case Checkpoint::Beta4: return "beta4";
        case Checkpoint::Gamma: return "gamma";
    }
    return "?";
}

void Layout::add(std::string role, LineRange range) {
    if (role.empty()) {
        throw std::invalid_argument("layout role name must not be empty");
    }
    if (range.length < 1) {
        throw std::invalid_argument("layout role '" + role + "' must span at least one line");
    }
    if (find(role) != nullptr) {
        throw std::invalid_argument("duplicate layout role '" + role + "'");
    }
    entries_.push_back(LayoutEntry{std::move(role), range});
}

const LineRange* Layout::find(std::string_view role) const {
    for (const auto& e : entries_) {
        if (e.role == role) return &e.range;
    }
    return nullptr;
}

LineRange Layout::at(std::string_view role) const {
    if (const LineRange* r = find(role)) return *r;
    throw std::out_of_range("layout has no role '" + std::string(role) + "'");
}

void Layout::validate(uint32_t width, bool require_cover) const {
    std::vector<uint8_t> owner(width, 0);
    for (const auto& e : entries_) {
        if (static_cast<uint64_t>(e.range.start) + e.range.length > width) {
            throw std::invalid_argument("layout role '" + e.role + "' exceeds width " +
                                        std::to_string(width));
        }
        for (uint32_t i = 0; i < e.range.length; ++i) {
            if (owner[e.range.start + i]) {
                throw std::invalid_argument("layout roles overlap at line " +
                                            std::to_string(e.range.start + i));
            }
            owner[e.range.start + i] = 1;
        }
    }
    if (require_cover) {
        for (uint32_t i = 0; i < width; ++i) {
            if (!owner[i]) {
                throw std::invalid_argument("layout does not cover line " + std::to_string(i));
            }
        }
    }
}

bool WiringDiagram::reversible() const {
    return std::all_of(gates.begin(), gates.end(), [](const Gate& g) { return g.is_reversible(); });
}

void WiringDiagram::validate() const {
    for (size_t i = 0; i < gates.size(); ++i) {
        if (gates[i].max_line() >= width) {
            throw std::invalid_argument("gate " + std::to_string(i) + " references line " +
                                        std::to_string(gates[i].max_line()) +
                                        " outside width " + std::to_string(width));
        }
    }
    for (const Mark& m : marks) {
        if (m.gate_index > gates.size()) {
            throw std::invalid_argument("mark past end of gate list");
        }
    }
    layout.validate(width, false);
}

Register apply_gate(const Register& reg, const Gate& gate) {
    if (gate.max_line() >= reg.width()) {
        throw std::out_of_range("gate references line " + std::to_string(gate.max_line()) +
                                " outside register of width " + std::to_string(reg.width()));
    }
    Register out = reg;
    apply_gate_in_place(out.data(), gate);
    return out;
}

RunResult run_diagram(const WiringDiagram& diagram, const Register& reg) {
    if (reg.width() != diagram.width) {
        throw std::invalid_argument("register width " + std::to_string(reg.width()) +
                                    " does not match diagram width " +
                                    std::to_string(diagram.width));
    }
    RunResult result{reg, 0};
    uint8_t* bits = result.reg.data();
    for (const Gate& g : diagram.gates) {
        apply_gate_in_place(bits, g);
    }
    result.ops_applied = diagram.gates.size();
    return result;
}

TracedRun run_diagram_traced(const WiringDiagram& diagram, const Register& reg) {
    if (reg.width() != diagram.width) {
        throw std::invalid_argument("register width does not match diagram width");
    }
    // Builders emit marks in gate order, but parsed diagrams may not.
    std::vector<size_t> order(diagram.marks.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t lhs, size_t rhs) {
        return diagram.marks[lhs].gate_index < diagram.marks[rhs].gate_index;
    });
    TracedRun result{reg, 0, {}};
    size_t next_mark = 0;
    auto take_snapshots = [&](uint64_t pos) {
        while (next_mark < order.size() &&
               diagram.marks[order[next_mark]].gate_index == pos) {
            const Mark& m = diagram.marks[order[next_mark]];
            result.snapshots.push_back(MarkSnapshot{m.stage, m.checkpoint, result.reg});
            ++next_mark;
        }
    };
    take_snapshots(0);
    for (size_t i = 0; i < diagram.gates.size(); ++i) {
        apply_gate_in_place(result.reg.data(), diagram.gates[i]);
        take_snapshots(i + 1);
    }
    result.ops_applied = diagram.gates.size();
    return result;
}

WiringDiagram invert_diagram(const WiringDiagram& diagram) {
    for (const Gate& g : diagram.gates) {
        if (!g.is_reversible()) {
            throw std::invalid_argument(
                "diagram contains RESET/CRESET and cannot be inverted: once zeroed, the "
                "original line value cannot be reconstructed");
        }
    }
    WiringDiagram inverse;
    inverse.width = diagram.width;
    inverse.layout = diagram.layout;
    inverse.gates.assign(diagram.gates.rbegin(), diagram.gates.rend());
    return inverse;
}

}  // namespace qap
