#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qap/builders.hpp"
#include "qap/netlist_io.hpp"
#include "qap/oracle.hpp"
#include "qap/processor.hpp"

namespace py = pybind11;
using namespace qap;

namespace {

// OpsCount can exceed 64 bits (successive subtraction at large n); hand the
// decimal form to CPython and let it build the arbitrary-precision int.
py::int_ ops_to_int(OpsCount value) {
    return py::int_(py::str(ops_to_string(value)));
}

std::vector<uint8_t> register_bits(const Register& reg) {
    std::vector<uint8_t> bits(reg.width());
    for (uint32_t i = 0; i < reg.width(); ++i) bits[i] = reg.bit(i);
    return bits;
}

}  // namespace

PYBIND11_MODULE(_qap, m) {
    m.doc() = "gate-level restoring/successive-subtraction division and divisor search";

    py::enum_<Variant>(m, "Variant")
        .value("RESTORING", Variant::RestoringReversible)
        .value("RESTORING_IRREV", Variant::RestoringIrreversible)
        .value("SS", Variant::SuccessiveSubtraction);
    m.def("variant_from_name", &variant_from_name, py::arg("name"));
    m.def("variant_name", [](Variant v) { return std::string(variant_name(v)); });

    py::class_<LineRange>(m, "LineRange")
        .def(py::init<uint32_t, uint32_t>(), py::arg("start"), py::arg("length"))
        .def_readonly("start", &LineRange::start)
        .def_readonly("length", &LineRange::length)
        .def(py::self == py::self)
        .def("__repr__", [](const LineRange& r) {
            return "LineRange(start=" + std::to_string(r.start) +
                   ", length=" + std::to_string(r.length) + ")";
        });

    py::class_<Register>(m, "Register")
        .def(py::init<uint32_t>(), py::arg("width"))
        .def_property_readonly("width", &Register::width)
        .def("bit", &Register::bit, py::arg("line"))
        .def("set_bit", &Register::set_bit, py::arg("line"), py::arg("value"))
        .def("bits", &register_bits)
        .def(py::self == py::self);

    m.def("register_from_value", &register_from_value, py::arg("value"), py::arg("width"));
    m.def("read_bus", &read_bus, py::arg("register"), py::arg("range"));
    m.def("write_bus", &write_bus, py::arg("register"), py::arg("range"), py::arg("value"));

    py::enum_<GateKind>(m, "GateKind")
        .value("NOT", GateKind::Not)
        .value("CNOT", GateKind::Cnot)
        .value("TOFFOLI", GateKind::Toffoli)
        .value("RESET", GateKind::Reset)
        .value("CRESET", GateKind::Creset);

    py::class_<Gate>(m, "Gate")
        .def_static("not_gate", &Gate::not_gate, py::arg("target"))
        .def_static("cnot", &Gate::cnot, py::arg("control"), py::arg("target"))
        .def_static("toffoli", &Gate::toffoli, py::arg("control0"), py::arg("control1"),
                    py::arg("target"))
        .def_static("reset", &Gate::reset, py::arg("target"))
        .def_static("creset", &Gate::creset, py::arg("control"), py::arg("target"))
        .def_readonly("kind", &Gate::kind)
        .def_readonly("target", &Gate::target)
        .def_readonly("control0", &Gate::control0)
        .def_readonly("control1", &Gate::control1)
        .def(py::self == py::self);

    py::class_<Layout>(m, "Layout")
        .def("has", &Layout::has, py::arg("role"))
        .def("at", &Layout::at, py::arg("role"))
        .def("roles", [](const Layout& layout) {
            std::vector<std::pair<std::string, LineRange>> out;
            for (const LayoutEntry& e : layout.entries()) out.emplace_back(e.role, e.range);
            return out;
        });

    py::class_<WiringDiagram>(m, "WiringDiagram")
        .def_readonly("width", &WiringDiagram::width)
        .def_readonly("layout", &WiringDiagram::layout)
        .def_property_readonly("gates", [](const WiringDiagram& d) { return d.gates; })
        .def_property_readonly("gate_count", &WiringDiagram::gate_count)
        .def_property_readonly("reversible", &WiringDiagram::reversible)
        .def(py::self == py::self);

    m.def("apply_gate", &apply_gate, py::arg("register"), py::arg("gate"));
    m.def(
        "run_diagram",
        [](const WiringDiagram& d, const Register& r) {
            RunResult result = run_diagram(d, r);
            return py::make_tuple(result.reg, result.ops_applied);
        },
        py::arg("diagram"), py::arg("register"));
    m.def("invert_diagram", &invert_diagram, py::arg("diagram"));
    m.def("serialize_netlist", &serialize_netlist, py::arg("diagram"));
    m.def("parse_netlist", &parse_netlist, py::arg("text"));

    py::class_<ProblemSpec>(m, "ProblemSpec")
        .def(py::init<uint32_t, Variant>(), py::arg("n"), py::arg("variant"))
        .def_readonly("n", &ProblemSpec::n)
        .def_readonly("variant", &ProblemSpec::variant);

    m.def("build_adder", &build_adder, py::arg("k"));
    m.def("build_adder_fixed_msb", &build_adder_fixed_msb, py::arg("k"), py::arg("msb"));
    m.def("build_twos_complement", &build_twos_complement, py::arg("k"));
    m.def("build_zero_test", &build_zero_test, py::arg("k"));
    m.def("build_restoring_division", &build_restoring_division, py::arg("spec"));
    m.def(
        "build_restoring_division",
        [](uint32_t n, Variant variant) {
            return build_restoring_division(ProblemSpec{n, variant});
        },
        py::arg("n"), py::arg("variant") = Variant::RestoringIrreversible);

    py::class_<SsDivider>(m, "SsDivider")
        .def_readonly("subtract_stage", &SsDivider::subtract_stage)
        .def_readonly("match_test", &SsDivider::match_test)
        .def_readonly("carry_line", &SsDivider::carry_line)
        .def_readonly("iteration_cap", &SsDivider::iteration_cap);
    m.def(
        "build_ss_divider",
        [](uint32_t n) { return build_ss_divider(ProblemSpec{n, Variant::SuccessiveSubtraction}); },
        py::arg("n"));
    m.def("ss_single_pass", &ss_single_pass, py::arg("divider"));

    m.def("problem_size", &problem_size, py::arg("diagram"));
    m.def("remainder_range", &remainder_range, py::arg("diagram"));
    m.def("init_division_register", &init_division_register, py::arg("diagram"),
          py::arg("dividend"), py::arg("divisor"));

    py::class_<GateOutcome>(m, "GateOutcome")
        .def_readonly("has_quotient", &GateOutcome::has_quotient)
        .def_readonly("quotient", &GateOutcome::quotient)
        .def_readonly("remainder", &GateOutcome::remainder)
        .def_readonly("flag", &GateOutcome::flag);
    m.def("read_outcome", &read_outcome, py::arg("diagram"), py::arg("final_state"));

    py::class_<DivisionOutcome>(m, "DivisionOutcome")
        .def_readonly("quotient", &DivisionOutcome::quotient)
        .def_readonly("remainder", &DivisionOutcome::remainder)
        .def_readonly("flag", &DivisionOutcome::flag);

    py::class_<StageRecord>(m, "StageRecord")
        .def_readonly("partial_before", &StageRecord::partial_before)
        .def_readonly("carry_beta1", &StageRecord::carry_beta1)
        .def_readonly("restored", &StageRecord::restored)
        .def_readonly("quotient_bit", &StageRecord::quotient_bit)
        .def_readonly("partial_after", &StageRecord::partial_after);

    py::class_<StageTrace>(m, "StageTrace")
        .def_readonly("n", &StageTrace::n)
        .def_readonly("dividend", &StageTrace::dividend)
        .def_readonly("divisor", &StageTrace::divisor)
        .def_readonly("stages", &StageTrace::stages);

    m.def(
        "oracle_restoring_division",
        [](uint64_t N, uint64_t d, uint32_t n) {
            auto [outcome, trace] = oracle_restoring_division(N, d, n);
            return py::make_tuple(outcome, trace);
        },
        py::arg("dividend"), py::arg("divisor"), py::arg("n"));
    m.def(
        "oracle_ss",
        [](uint64_t N, uint64_t d, uint32_t n) {
            SsOracleResult r = oracle_ss(N, d, n);
            return py::make_tuple(r.flag, r.iterations);
        },
        py::arg("dividend"), py::arg("divisor"), py::arg("n"));
    m.def("brute_force_divisors", &brute_force_divisors, py::arg("dividend"));
    m.def("format_stage_trace", &format_stage_trace, py::arg("trace"));
    m.def("format_ss_trace", &format_ss_trace, py::arg("dividend"), py::arg("divisor"),
          py::arg("n"));
    m.def("gate_stage_trace", &gate_stage_trace, py::arg("diagram"), py::arg("register"));

    m.def("paper_bits", &paper_bits, py::arg("n"), py::arg("variant"));
    m.def(
        "paper_ops", [](uint32_t n, Variant v) { return ops_to_int(paper_ops(n, v)); },
        py::arg("n"), py::arg("variant"));
    m.def(
        "reference_ops", [](uint32_t n, Variant v) { return ops_to_int(reference_ops(n, v)); },
        py::arg("n"), py::arg("variant"));
    m.def("reference_bits", &reference_bits, py::arg("n"), py::arg("variant"));

    py::class_<ResourceReport>(m, "ResourceReport")
        .def_readonly("n", &ResourceReport::n)
        .def_readonly("variant", &ResourceReport::variant)
        .def_readonly("bits_measured", &ResourceReport::bits_measured)
        .def_readonly("bits_paper", &ResourceReport::bits_paper)
        .def_property_readonly(
            "ops_measured", [](const ResourceReport& r) { return ops_to_int(r.ops_measured); })
        .def_property_readonly(
            "ops_paper", [](const ResourceReport& r) { return ops_to_int(r.ops_paper); });
    m.def(
        "resource_stats",
        [](const WiringDiagram& d, uint32_t n, Variant v) { return resource_stats(d, n, v); },
        py::arg("diagram"), py::arg("n"), py::arg("variant"));
    m.def(
        "resource_stats_ss", [](const SsDivider& ss, uint32_t n) { return resource_stats(ss, n); },
        py::arg("divider"), py::arg("n"));

    py::enum_<BankMode>(m, "BankMode")
        .value("ALL_INTEGERS", BankMode::AllIntegers)
        .value("PRIMES_ONLY", BankMode::PrimesOnly);

    py::class_<DivisorReport>(m, "DivisorReport")
        .def_readonly("dividend", &DivisorReport::dividend)
        .def_readonly("filter_sqrt", &DivisorReport::filter_sqrt)
        .def_readonly("divisors", &DivisorReport::divisors)
        .def_readonly("cofactors", &DivisorReport::cofactors)
        .def("__repr__", [](const DivisorReport& r) {
            std::string out = "DivisorReport(dividend=" + std::to_string(r.dividend) +
                              ", divisors=[";
            for (size_t i = 0; i < r.divisors.size(); ++i) {
                if (i) out += ", ";
                out += std::to_string(r.divisors[i]);
            }
            return out + "])";
        });

    m.def(
        "find_divisors",
        [](uint64_t N, Variant variant, bool filter_sqrt, BankMode mode, unsigned jobs) {
            FindOptions options;
            options.variant = variant;
            options.filter_sqrt = filter_sqrt;
            options.mode = mode;
            options.jobs = jobs;
            return find_divisors(N, options);
        },
        py::arg("dividend"), py::arg("variant") = Variant::RestoringIrreversible,
        py::arg("filter_sqrt") = true, py::arg("mode") = BankMode::AllIntegers,
        py::arg("jobs") = 0);

    m.def("padded_problem_size", &padded_problem_size, py::arg("dividend"));
    m.def("primes_below_power", &primes_below_power, py::arg("m"));

    py::class_<SsRunResult>(m, "SsRunResult")
        .def_readonly("reg", &SsRunResult::reg)
        .def_readonly("iterations", &SsRunResult::iterations)
        .def_readonly("tested", &SsRunResult::tested);
    m.def("run_ss_register", &run_ss_register, py::arg("divider"), py::arg("register"));
}
