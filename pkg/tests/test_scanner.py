"""Tests for family scans, checkpoint resume, reports, and the command line."""

import json
import subprocess
import sys

import pytest

from multbound import NeedsCapError, check_hf, check_ideal, scan
from multbound.cli import main

from goldens import (
    IDEAL_STABLE_NONCM,
    IDEAL_TRUNC_CERT,
    IDEAL_TRUNC_MULT,
    LEX_1_3_6_7_3_1,
    MID_1_3_6_7_3_1,
    MIN_1_3_6_7_3_1,
    diagram,
)

EXPECTED_EXCEPTIONS = [
    ("1,3,4,4,3", "ELIMINATED", "er,gen"),
    ("1,3,6,7,6,2", "ELIMINATED", "er,gen"),
    ("1,3,6,7,7,5", "ELIMINATED", "er,gen"),
]


@pytest.fixture(scope="module")
def baseline():
    return scan(3, 5, (1, 3), jobs=1)


def test_small_family_scan_frozen_counts(baseline):
    assert baseline.status == "COMPLETE"
    assert baseline.counts["scanned"] == 813
    assert baseline.counts["bound_holds"] == 810
    assert baseline.counts["eliminated"] == 3
    assert baseline.counts["unresolved"] == 0
    assert baseline.counts["eliminated_by"] == {"er,gen": 3}
    triples = [(r["hf"], r["status"], r["reason"]) for r in baseline.exceptions]
    assert triples == EXPECTED_EXCEPTIONS
    assert baseline.checkpoint_cursor == "1,3,6,10,15,21"
    rec = baseline.exceptions[0]
    assert rec["e"] == 15 and rec["lhs"] == 90
    assert rec["rhs"] < rec["lhs"]
    assert rec["witnesses"]["violating_diagrams"] >= 1
    assert rec["witnesses"]["survivors"] == []


def test_single_variable_scan_all_hold():
    report = scan(1, 7, jobs=1)
    assert report.counts["scanned"] == 8
    assert report.counts["bound_holds"] == 8
    assert report.exceptions == []
    assert report.status == "COMPLETE"


def test_scan_is_deterministic_across_worker_counts(baseline):
    parallel = scan(3, 5, (1, 3), jobs=2, chunk_size=64)
    a = json.loads(baseline.to_json())
    b = json.loads(parallel.to_json())
    a.pop("timing")
    b.pop("timing")
    assert a == b
    assert baseline.to_csv() == parallel.to_csv()


def test_scan_resumes_from_checkpoint(baseline, tmp_path):
    cp = tmp_path / "scan.ckpt"
    first = scan(3, 5, (1, 3), jobs=1, chunk_size=100, checkpoint_path=str(cp), limit=300)
    assert first.status == "INCOMPLETE"
    assert first.counts["scanned"] == 300
    assert cp.exists()
    with pytest.raises(ValueError):
        scan(3, 4, (1, 3), jobs=1, checkpoint_path=str(cp))
    second = scan(3, 5, (1, 3), jobs=1, chunk_size=100, checkpoint_path=str(cp))
    assert second.status == "COMPLETE"
    assert second.counts == baseline.counts
    assert second.to_csv() == baseline.to_csv()


def test_scan_report_formats(baseline, tmp_path):
    payload = json.loads(baseline.to_json())
    assert set(payload) == {
        "parameters", "counts", "exceptions", "timing", "checkpoint_cursor", "status",
    }
    assert payload["parameters"] == {
        "n": 3, "socle_max": 5, "prefix": [1, 3],
        "filters": ["aci", "er", "gen", "growth"], "dfs_cap": 1_000_000,
    }
    assert set(payload["exceptions"][0]) == {
        "hf", "e", "shifts", "lhs", "rhs", "status", "reason", "diagram", "witnesses",
    }
    lines = baseline.to_csv().splitlines()
    assert lines[0] == "hf,e,M,lhs,rhs,status,reason"
    assert len(lines) == 4
    assert lines[1].startswith('"1,3,4,4,3"')
    assert lines[1].endswith('"er,gen"')
    out_json = tmp_path / "report.json"
    out_csv = tmp_path / "report.csv"
    scan(3, 3, (1, 3), jobs=1, out_path=str(out_json))
    scan(3, 3, (1, 3), jobs=1, out_path=str(out_csv), out_format="csv")
    assert json.loads(out_json.read_text())["status"] == "COMPLETE"
    assert out_csv.read_text().splitlines()[0] == "hf,e,M,lhs,rhs,status,reason"


def test_scan_summary_content(baseline):
    text = baseline.summary()
    assert "scan: n=3 prefix=1,3 socle_max=5 filters=aci,er,gen,growth dfs_cap=1000000" in text
    assert "scanned 813 Hilbert functions" in text
    assert "bound holds: 810" in text
    assert "exceptions: 3 (eliminated 3, unresolved 0)" in text
    assert "eliminated by: er,gen: 3" in text
    assert "status: COMPLETE" in text
    assert "unresolved Hilbert functions" not in text


def test_scan_rejects_bad_arguments():
    with pytest.raises(ValueError):
        scan(3, 3, filters=("bogus",))
    with pytest.raises(ValueError):
        scan(3, 3, out_format="xml")


def test_check_hf_prints_the_full_pipeline():
    result, text, code = check_hf("1,3,6,7,3,1")
    assert code == 0
    assert result.status == "BOUND_HOLDS"
    assert "H: 1,3,6,7,3,1 (n=3, socle degree 5)" in text
    assert "e = 21" in text
    assert "lex ideal: 12 generators" in text
    assert diagram(LEX_1_3_6_7_3_1).to_text() in text
    assert "after cancellations in columns (1,2):" in text
    assert diagram(MID_1_3_6_7_3_1).to_text() in text
    assert "after cancellations in columns (2,3):" in text
    assert diagram(MIN_1_3_6_7_3_1).to_text() in text
    assert "min shifts: 3 5 6" in text
    assert "max shifts: 4 5 8" in text
    assert "bounds: 15 <= 21 <= 80/3" in text
    assert "upper bound HOLDS (126 <= 160)" in text
    assert "lower bound HOLDS (90 <= 126)" in text
    assert text.rstrip().endswith("status: BOUND_HOLDS")


def test_check_hf_accepts_value_sequences():
    _, text, code = check_hf((1, 3, 6, 9, 9, 6, 2))
    assert code == 0
    assert "total: 1 16 27 12" in text
    assert "bounds: 27 <= 36 <= 42" in text


def test_check_hf_single_variable_default():
    result, text, code = check_hf("1,1,1")
    assert code == 0
    assert "(n=1, socle degree 2)" in text
    assert "bounds: 3 <= 3 <= 3" in text
    assert result.status == "BOUND_HOLDS"


def test_check_hf_not_admissible():
    result, text, code = check_hf("1,3,7")
    assert result is None
    assert code == 0
    assert "status: NOT_ADMISSIBLE" in text


def test_check_hf_unresolved_case():
    result, text, code = check_hf("1,3,6,10,15,21,22,21,15")
    assert code == 2
    assert result.status == "UNRESOLVED"
    assert "diagrams pass all filters" in text
    assert "surviving diagram 1:" in text
    assert "violating diagrams:" in text


def test_check_ideal_certified_case():
    analysis, text, code = check_ideal(IDEAL_TRUNC_CERT)
    assert code == 0
    assert analysis.certified
    assert "ideal: a^3; a*b^2; b^4; c^4; a^2*b*c^3 (n=3)" in text
    assert "e = 31" in text
    assert "pure: no   quasipure: no" in text
    assert "truncation analysis: CERTIFIED" in text
    assert "e = 31 vs truncation e = 57" in text
    assert "upper bound HOLDS (342 <= 432)" in text


def test_check_ideal_with_explicit_truncation():
    _, text, code = check_ideal(IDEAL_TRUNC_MULT, truncate_at=3)
    assert code == 0
    assert "e = 11, truncation e = 13" in text
    assert "rows >= 3 preserved under truncation: yes" in text
    assert "truncation analysis: NOT_APPLICABLE (no minimal generator of degree 4 or 5)" in text


def test_check_ideal_trivial_case():
    analysis, text, code = check_ideal("a")
    assert code == 0
    assert analysis.certified
    assert "upper bound HOLDS (1 <= 1)" in text
    assert "lower bound HOLDS (1 <= 1)" in text


def test_check_ideal_non_artinian_needs_cap():
    with pytest.raises(NeedsCapError):
        check_ideal(IDEAL_STABLE_NONCM)
    _, text, code = check_ideal(IDEAL_STABLE_NONCM, degree_cap=8)
    assert code == 0
    assert "Hilbert function through degree 8: 1,3,6,4,4,4,4,4,4 (not Artinian)" in text
    assert "truncation analysis" not in text
    _, text, _ = check_ideal(IDEAL_STABLE_NONCM, truncate_at=3, degree_cap=9)
    assert "rows >= 3 preserved under truncation: yes" in text


def test_cli_check_hf_exit_codes(capsys):
    assert main(["check-hf", "1,3,6,7,3,1"]) == 0
    assert "status: BOUND_HOLDS" in capsys.readouterr().out
    assert main(["check-hf", "1,3,7"]) == 0
    assert "NOT_ADMISSIBLE" in capsys.readouterr().out
    assert main(["check-hf", "1,3,6,10,15,21,22,21,15"]) == 2
    assert "UNRESOLVED" in capsys.readouterr().out


def test_cli_scan_exit_codes(capsys):
    assert main([
        "scan", "--vars", "3", "--socle-max", "4", "--prefix", "1,3", "--jobs", "1",
    ]) == 0
    out = capsys.readouterr().out
    assert "status: COMPLETE" in out
    assert main([
        "scan", "--vars", "3", "--socle-max", "4", "--prefix", "1,3", "--jobs", "1",
        "--limit", "50",
    ]) == 1
    assert "status: INCOMPLETE" in capsys.readouterr().out
    assert main(["scan", "--vars", "3", "--socle-max", "3", "--filters", "bogus"]) == 1
    assert "unknown filters" in capsys.readouterr().err


def test_cli_check_ideal_exit_codes(capsys):
    assert main(["check-ideal", IDEAL_TRUNC_CERT]) == 0
    assert "CERTIFIED" in capsys.readouterr().out
    assert main(["check-ideal", IDEAL_STABLE_NONCM]) == 1
    assert "error:" in capsys.readouterr().err
    assert main(["check-ideal", "a^3; q2"]) == 1
    assert "at position" in capsys.readouterr().err


def test_cli_scan_writes_report_files(tmp_path, capsys):
    out = tmp_path / "n1.json"
    assert main([
        "scan", "--vars", "1", "--socle-max", "3", "--jobs", "1",
        "--out", str(out), "--format", "json",
    ]) == 0
    capsys.readouterr()
    assert json.loads(out.read_text())["counts"]["scanned"] == 4


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "multbound", "check-hf", "1,3,6,7,3,1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "status: BOUND_HOLDS" in proc.stdout
