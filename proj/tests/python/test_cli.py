"""Exit-code and format contract of the qap command-line tool."""

import os
import subprocess

import pytest

CLI = os.environ.get("QAP_CLI")

pytestmark = pytest.mark.skipif(not CLI, reason="QAP_CLI not set")


def run(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def test_factor_exit_codes():
    found = run("factor", "91")
    assert found.returncode == 0
    assert "7 x 13" in found.stdout

    oversized = run("factor", "18446744073709551615")
    assert oversized.returncode == 2
    assert "exceeds the supported size" in oversized.stderr

    prime = run("factor", "13")
    assert prime.returncode == 1
    assert "no divisors <= 3" in prime.stdout

    usage = run("factor", "not-a-number")
    assert usage.returncode == 2

    missing = run("factor")
    assert missing.returncode == 2

    bad_variant = run("factor", "91", "--variant", "bogus")
    assert bad_variant.returncode == 2


def test_factor_records_are_parallelism_stable():
    outputs = {run("factor", "3600", "--all", "--format", "records", "--jobs", str(j)).stdout
               for j in (1, 4, 8)}
    env = dict(os.environ, QAP_JOBS="3")
    via_env = subprocess.run([CLI, "factor", "3600", "--all", "--format", "records"],
                             capture_output=True, text=True, env=env)
    outputs.add(via_env.stdout)
    assert len(outputs) == 1
    lines = outputs.pop().strip().splitlines()
    parsed = [dict(kv.split("=") for kv in line.split()) for line in lines]
    assert {p["divisor"] for p in parsed} == {
        str(d) for d in range(2, 61) if 3600 % d == 0
    }
    for p in parsed:
        assert int(p["divisor"]) * int(p["cofactor"]) == 3600


def test_factor_trace_mentions_stages():
    out = run("factor", "15", "--variant", "ss", "--trace")
    assert out.returncode == 0
    assert "15 = 3 x 5" in out.stdout
    assert "sub 1:" in out.stdout

    restoring = run("factor", "15", "--variant", "restoring", "--trace")
    assert "quotient 101 = 5" in restoring.stdout


def test_report_values():
    report = run("report", "4", "--variant", "restoring-irrev", "--format", "records")
    assert report.returncode == 0
    rows = dict()
    for line in report.stdout.strip().splitlines():
        fields = dict(kv.split("=") for kv in line.split())
        rows[fields["row"]] = fields
    assert rows["bits"]["paper"] == "16"

    ss = run("report", "8", "--variant", "ss", "--format", "records")
    fields = dict(kv.split("=") for kv in ss.stdout.strip().splitlines()[0].split())
    assert fields["paper"] == "25"

    odd = run("report", "5", "--variant", "restoring")
    assert odd.returncode == 2


def test_export_round_trip(tmp_path):
    path = tmp_path / "d.qapnet"
    first = run("export", "4", "--variant", "restoring", "-o", str(path))
    assert first.returncode == 0
    text = path.read_text()
    assert text.startswith("QAPNET 1\nwidth 21\n")

    import qap

    reparsed = qap.parse_netlist(text)
    assert reparsed == qap.build_restoring_division(4, qap.Variant.RESTORING)
    assert qap.serialize_netlist(reparsed) == text

    unwritable = run("export", "4", "--variant", "restoring", "-o",
                     str(tmp_path / "missing" / "d.qapnet"))
    assert unwritable.returncode == 2


def test_verify_passes():
    out = run("verify", "--max-n", "6")
    assert out.returncode == 0
    assert "all suites passed" in out.stdout
