#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qap/register.hpp"

namespace qap {

enum class GateKind : uint8_t { Not, Cnot, Toffoli, Reset, Creset };

/// Number of control lines the gate kind carries (NOT/RESET 0, CNOT/CRESET 1,
/// TOFFOLI 2).
int gate_controls(GateKind kind);

std::string_view gate_kind_name(GateKind kind);

/// One primitive operation on register lines. All referenced lines are
/// pairwise distinct; use the factory functions, which enforce that.
struct Gate {
    GateKind kind = GateKind::Not;
    uint32_t target = 0;
    uint32_t control0 = 0;
    uint32_t control1 = 0;

    static Gate not_gate(uint32_t target);
    static Gate cnot(uint32_t control, uint32_t target);
    static Gate toffoli(uint32_t control0, uint32_t control1, uint32_t target);
    static Gate reset(uint32_t target);
    static Gate creset(uint32_t control, uint32_t target);

    /// Largest line index referenced, for bounds checks.
    uint32_t max_line() const;

    bool is_reversible() const {
        return kind != GateKind::Reset && kind != GateKind::Creset;
    }

    bool operator==(const Gate&) const = default;
};

/// Checkpoints inside a conditional subtract-add stage, in execution order.
enum class Checkpoint : uint8_t { Beta1, Beta2, Alpha, Beta3, Beta4, Gamma };

std::string_view checkpoint_name(Checkpoint cp);

/// Annotation tying a (stage, checkpoint) pair to a position in the gate
/// list: the checkpoint holds after the first `gate_index` gates have run.
struct Mark {
    uint32_t stage = 0;
    Checkpoint checkpoint = Checkpoint::Beta1;
    uint64_t gate_index = 0;

    bool operator==(const Mark&) const = default;
};

struct LayoutEntry {
    std::string role;
    LineRange range;

    bool operator==(const LayoutEntry&) const = default;
};

/// Maps named line roles (buses or single lines) to line ranges. Entries keep
/// insertion order; that order is also the serialization order.
class Layout {
public:
    void add(std::string role, LineRange range);

    bool has(std::string_view role) const { return find(role) != nullptr; }
    const LineRange* find(std::string_view role) const;
    LineRange at(std::string_view role) const;

    const std::vector<LayoutEntry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    /// Throws if any two roles overlap or any role exceeds `width`. When
    /// `require_cover` is set, the roles must also tile [0, width) exactly
    /// (true for every diagram the builders produce).
    void validate(uint32_t width, bool require_cover) const;

    bool operator==(const Layout&) const = default;

private:
    std::vector<LayoutEntry> entries_;
};

/// An ordered gate list over a fixed set of lines, with named line roles and
/// optional stage/checkpoint annotations.
struct WiringDiagram {
    uint32_t width = 0;
    std::vector<Gate> gates;
    Layout layout;
    std::vector<Mark> marks;

    bool reversible() const;
    uint64_t gate_count() const { return gates.size(); }

    /// Bounds-checks every gate and mark against width/gate count.
    void validate() const;

    bool operator==(const WiringDiagram&) const = default;
};

/// Applies one gate to a byte-per-line bit array. Hot path; no bounds checks.
inline void apply_gate_in_place(uint8_t* bits, const Gate& g) {
    switch (g.kind) {
        case GateKind::Not:
            bits[g.target] ^= 1u;
            break;
        case GateKind::Cnot:
            bits[g.target] ^= bits[g.control0];
            break;
        case GateKind::Toffoli:
            bits[g.target] ^= static_cast<uint8_t>(bits[g.control0] & bits[g.control1]);
            break;
        case GateKind::Reset:
            bits[g.target] = 0;
            break;
        case GateKind::Creset:
            bits[g.target] &= static_cast<uint8_t>(bits[g.control0] ^ 1u);
            break;
    }
}

/// Applies one gate and returns the new register state.
Register apply_gate(const Register& reg, const Gate& gate);

struct RunResult {
    Register reg;
    uint64_t ops_applied = 0;
};

/// Runs every gate in order. ops_applied always equals the gate count; gate
/// conditionality lives in the gate semantics, never in skipped gates.
RunResult run_diagram(const WiringDiagram& diagram, const Register& reg);

/// Register snapshot taken when execution passes a mark.
struct MarkSnapshot {
    uint32_t stage = 0;
    Checkpoint checkpoint = Checkpoint::Beta1;
    Register state;
};

struct TracedRun {
    Register reg;
    uint64_t ops_applied = 0;
    std::vector<MarkSnapshot> snapshots;
};

/// Like run_diagram but captures the register at every mark.
TracedRun run_diagram_traced(const WiringDiagram& diagram, const Register& reg);

/// Reverses the gate order. Every reversible gate is its own inverse, so the
/// result undoes the input diagram exactly. Marks are dropped (gate indices
/// would no longer line up). Throws std::invalid_argument if the diagram
/// contains RESET/CRESET: a zeroed line cannot be reconstructed.
WiringDiagram invert_diagram(const WiringDiagram& diagram);

}  // namespace qap
