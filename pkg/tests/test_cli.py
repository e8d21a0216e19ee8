import csv
import io
import json
import subprocess
import sys

import pytest

from ysyslab.cli import DEFAULT_SUITE, RunConfig, main, run_suite


def _run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_dilog_command(capsys):
    code, out = _run(capsys, "dilog", "--pair", "A2xA1", "--samples", "5")
    assert code == 0
    doc = json.loads(out.out)
    splus = next(r for r in doc["reports"] if r["check"] == "identity S+")
    assert splus["expected"] == "6" and len(splus["measured"]) == 5


def test_dilog_domain_filter(capsys):
    code, out = _run(capsys, "dilog", "--pair", "A1xA2", "--domain", "H-")
    checks = [r["check"] for r in json.loads(out.out)["reports"]]
    assert code == 0 and checks == ["identity H-", "identity S+ + S-"]


def test_tropical_command(capsys):
    code, out = _run(capsys, "tropical", "--pair", "A3xA2")
    counts = json.loads(out.out)["reports"][0]
    assert code == 0 and (counts["N_plus"], counts["N_minus"]) == (18, 24)


def test_constant_command(capsys, tmp_path):
    target = tmp_path / "constant.json"
    code, _ = _run(capsys, "constant", "--type", "A1", "--level", "2", "--out", str(target))
    rep = json.loads(target.read_text())["reports"][0]
    assert code == 0
    assert rep["identity_lhs"] == pytest.approx(0.5, abs=1e-13) and rep["identity_rhs"] == 0.5


def test_periodicity_symbolic(capsys):
    code, out = _run(capsys, "periodicity", "--pair", "A2xA1", "--symbolic")
    names = [r["check"] for r in json.loads(out.out)["reports"]]
    assert code == 0
    assert {"periodicity tropical", "periodicity numeric", "y_system", "periodicity rational",
            "cross_backend", "f_polynomials"} == set(names)


def test_wedge_command(capsys):
    code, out = _run(capsys, "wedge", "--pair", "A2xA1")
    assert code == 0 and json.loads(out.out)["passed"]


def test_error_exit_codes(capsys):
    code, out = _run(capsys, "wedge", "--pair", "D4xA2")
    assert code == 2 and "budget" in out.err
    code, out = _run(capsys, "tropical", "--pair", "F4xA1")
    assert code == 2
    code, out = _run(capsys, "tropical")
    assert code == 2
    code, out = _run(capsys, "dilog", "--pair", "A2xA1", "--tol", "-1")
    assert code == 2


def test_output_is_deterministic(capsys):
    first = _run(capsys, "limit", "--pair", "A3xA1")[1].out
    second = _run(capsys, "limit", "--pair", "A3xA1")[1].out
    assert first == second


def test_csv_output(capsys):
    code, out = _run(capsys, "tropical", "--pair", "A2xA2", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out.out)))
    assert code == 0 and rows[0]["check"] == "tropical_counts" and rows[0]["pair"] == "A2xA2"


def test_suite_subset(capsys):
    code, out = _run(capsys, "all", "--pair", "A2xA1", "--pair", "A1xA2", "--workers", "2")
    doc = json.loads(out.out)
    assert code == 0 and set(doc["summary"]["pairs"]) == {"A2xA1", "A1xA2"}


def test_default_suite_passes():
    summary, reports = run_suite(DEFAULT_SUITE, RunConfig("all"), workers=4)
    assert summary["passed"], [r.to_dict() for r in reports if not r.passed]
    assert len(summary["pairs"]) == 15
    # pairs over the symbolic budget skip the wedge check
    assert "wedge" not in summary["pairs"]["D4xA3"]


def test_empty_suite():
    summary, reports = run_suite([])
    assert summary == {"pairs": {}, "passed": True} and reports == []


def test_sign_flip_is_caught(monkeypatch):
    import ysyslab.cluster.frame as frame
    from ysyslab.cluster.seed import mutate_coefficients

    def flipped(B, y, k, backend):
        return mutate_coefficients(-B, y, k, backend)

    monkeypatch.setattr(frame, "mutate_coefficients", flipped)
    summary, reports = run_suite(["A2xA1"])
    assert not summary["passed"]
    assert any(r.witnesses for r in reports if not r.passed)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ysyslab.cli", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and "ysyslab" in proc.stdout
