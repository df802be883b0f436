"""Check reports: status logic, stable serialization, exit codes."""

import json

import pytest

from hypdef import CheckReport, exit_code, report_emit


def make(check_id, err, tol):
    return CheckReport.from_error(check_id, err, tol, samples=5, seed=7)


def test_status_follows_tolerance():
    assert make("a", 1e-12, 1e-10).status == "pass"
    assert make("a", 1e-10, 1e-10).status == "pass"  # boundary counts as pass
    assert make("a", 2e-10, 1e-10).status == "fail"


def test_divergence_status():
    good = CheckReport.divergence("d", expected=True, samples=1, seed=7)
    bad = CheckReport.divergence("d", expected=False, samples=1, seed=7)
    assert good.status == "diverges"
    assert good.ok
    assert bad.status == "fail"
    assert not bad.ok


def test_exit_code_logic():
    ok = make("a", 0.0, 1.0)
    div = CheckReport.divergence("b", expected=True, samples=1, seed=7)
    bad = make("c", 2.0, 1.0)
    assert exit_code([ok, div]) == 0
    assert exit_code([ok, bad]) == 1
    assert exit_code([]) == 0


def test_json_schema_and_ordering():
    reports = [make("zeta", 0.0, 1.0), make("alpha", 0.0, 1.0)]
    payload = json.loads(report_emit(reports, format="json"))
    assert [r["check_id"] for r in payload] == ["alpha", "zeta"]
    assert set(payload[0]) == {
        "check_id",
        "status",
        "max_error",
        "tolerance",
        "samples",
        "seed",
        "details",
    }


def test_json_bytes_are_stable():
    reports = [make("a", 1.234e-11, 1e-9), make("b", 0.0, 1e-9)]
    assert report_emit(reports) == report_emit(list(reversed(reports)))
    assert report_emit(reports).endswith(b"\n")


def test_text_format_summary_line():
    reports = [
        make("good", 0.0, 1.0),
        make("bad", 2.0, 1.0),
        CheckReport.divergence("div", expected=True, samples=1, seed=7),
    ]
    text = report_emit(reports, format="text").decode()
    lines = text.strip().splitlines()
    assert len(lines) == 4
    assert lines[-1] == "3 checks: 1 pass, 1 fail, 1 diverges (expected)"
    assert any(line.startswith("FAIL") for line in lines)


def test_unknown_format_rejected():
    with pytest.raises(ValueError):
        report_emit([], format="yaml")
