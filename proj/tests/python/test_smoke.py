"""Smoke tests for the _qap extension module."""

import math

import pytest

import qap


def test_find_divisors_matches_trial_division():
    report = qap.find_divisors(91)
    assert list(report.divisors) == [7]
    assert list(report.cofactors) == [13]

    for n in list(range(2, 200)) + [65535, 65521]:
        expected = [d for d in range(2, math.isqrt(n) + 1) if n % d == 0]
        assert list(qap.find_divisors(n).divisors) == expected, n


def test_every_variant_agrees():
    for variant in (qap.Variant.RESTORING, qap.Variant.RESTORING_IRREV, qap.Variant.SS):
        assert list(qap.find_divisors(360, variant=variant).divisors) == [
            2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 18,
        ]


def test_golden_division_run():
    diagram = qap.build_restoring_division(4, qap.Variant.RESTORING)
    assert diagram.reversible
    reg = qap.init_division_register(diagram, 15, 3)
    final, ops = qap.run_diagram(diagram, reg)
    assert ops == diagram.gate_count
    outcome = qap.read_outcome(diagram, final)
    assert (outcome.quotient, outcome.remainder, outcome.flag) == (5, 0, True)


def test_netlist_round_trip_is_byte_exact():
    diagram = qap.build_restoring_division(8, qap.Variant.RESTORING_IRREV)
    text = qap.serialize_netlist(diagram)
    back = qap.parse_netlist(text)
    assert back == diagram
    assert qap.serialize_netlist(back) == text


def test_parse_rejects_duplicate_lines():
    with pytest.raises(Exception, match="line 3"):
        qap.parse_netlist("QAPNET 1\nwidth 8\ngate CNOT 5 5\n")


def test_resource_formulas():
    assert qap.paper_bits(4, qap.Variant.RESTORING) == 22
    assert qap.paper_bits(8, qap.Variant.RESTORING_IRREV) == 32
    assert qap.paper_bits(8, qap.Variant.SS) == 25
    assert qap.paper_ops(32, qap.Variant.RESTORING) == 12202
    # past the 64-bit range: worst-case ss operation count at n = 64
    assert qap.paper_ops(64, qap.Variant.SS) == (8 * 64 + 6) * 2**63 + 3 * 64


def test_oracle_and_gate_level_ss_agree():
    divider = qap.build_ss_divider(10)
    reg = qap.init_division_register(divider.subtract_stage, 1023, 2)
    result = qap.run_ss_register(divider, reg)
    flag, iterations = qap.oracle_ss(1023, 2, 10)
    assert result.tested
    assert result.iterations == iterations == 512
    assert not flag


def test_invert_rejects_irreversible_diagrams():
    irrev = qap.build_restoring_division(4, qap.Variant.RESTORING_IRREV)
    with pytest.raises(Exception, match="RESET"):
        qap.invert_diagram(irrev)
    rev = qap.build_restoring_division(4, qap.Variant.RESTORING)
    inverse = qap.invert_diagram(rev)
    reg = qap.register_from_value(0b101011, rev.width)
    there, _ = qap.run_diagram(rev, reg)
    back, _ = qap.run_diagram(inverse, there)
    assert back == reg
