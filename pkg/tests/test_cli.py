import json
import subprocess
import sys
from pathlib import Path

import pytest

from radosearch import __version__
from radosearch.cli import main, parse_budget

GOLDEN = Path(__file__).parent / "golden"
SCHUR3 = "1 2 2 1 3 3 3 3 3 1 2 2 1"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_search_text(capsys):
    code, out, _ = run(capsys, "search", "--coeffs", "1,1", "--shift", "0", "--colors", "2", "--cap", "10")
    assert code == 0
    assert "Exact 5" in out
    assert "witness: 1 2 2 1" in out


def test_search_json_matches_golden(capsys):
    code, rec = run_json(capsys, "search", "--coeffs", "1,1", "--shift", "0", "--colors", "2", "--cap", "10")
    golden = json.loads((GOLDEN / "search_schur_t2.json").read_text())
    assert code == 0
    assert list(rec) == list(golden)
    assert isinstance(rec["elapsed_ms"], float) and rec["elapsed_ms"] >= 0
    rec["elapsed_ms"] = golden["elapsed_ms"] = None
    golden["engine_version"] = __version__
    assert rec == golden


def test_threads_give_same_value(capsys):
    base = ["search", "--coeffs", "1,1", "--shift", "-1", "--colors", "3", "--cap", "40"]
    _, one = run_json(capsys, *base, "--threads", "1")
    _, many = run_json(capsys, *base, "--threads", "4")
    assert one["value"] == many["value"] == 27
    assert one["witness"] == many["witness"]


def test_search_exceeds_cap_exit_3(capsys):
    code, rec = run_json(capsys, "search", "--coeffs", "1,1", "--shift", "-2", "--colors", "2", "--cap", "8")
    assert code == 3 and rec["status"] == "ExceedsCap"


def test_search_timeout_exit_3(capsys):
    code, rec = run_json(capsys, "search", "--coeffs", "2,1", "--shift", "84", "--colors", "3", "--cap", "87",
                         "--budget", "0.5s")
    assert code == 3 and rec["status"] == "Timeout"


def test_search_uses_store(capsys, tmp_path):
    argv = ["search", "--coeffs", "1,1", "--shift", "-1", "--colors", "2", "--store", str(tmp_path)]
    _, first = run_json(capsys, *argv)
    _, second = run_json(capsys, *argv)
    _, forced = run_json(capsys, *argv, "--force")
    assert (first["method"], second["method"], forced["method"]) == ("search", "store", "search")
    assert first["value"] == second["value"] == forced["value"] == 9


def test_out_file(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, stdout, _ = run(capsys, "search", "--coeffs", "3,1", "--shift", "2", "--colors", "2",
                          "--format", "json", "--out", str(out))
    assert code == 0 and stdout == ""
    assert json.loads(out.read_text())["value"] == 8


def test_verify_good(capsys):
    code, out, _ = run(capsys, "verify", "--coeffs", "1,1", "--shift", "0", "--colors", "3", "--coloring", SCHUR3)
    assert code == 0 and out.strip() == "good=true"


def test_verify_bad(capsys):
    code, out, _ = run(capsys, "verify", "--coeffs", "1,1", "--coloring", "1 1 2")
    assert code == 1
    assert "good=false" in out and "(1, 1, 2)" in out


def test_verify_file_and_excellent(capsys, tmp_path):
    f = tmp_path / "c.txt"
    f.write_text(SCHUR3 + "\n")
    code, out, _ = run(capsys, "verify", "--coeffs", "1,1", "--file", str(f), "--excellent")
    assert code == 0 and "excellent=true" in out
    f.write_text("1 2 1")
    code, rec = run_json(capsys, "verify", "--coeffs", "1,1", "--file", str(f), "--excellent")
    assert code == 1 and rec["excellent"] is False
    assert rec["monochromatic"]["tuple"] == [1, 1, 3]


def test_bounds_trivial(capsys):
    code, out, _ = run(capsys, "bounds", "--coeffs", "3,1", "--shift", "6")
    assert code == 0 and "trivial bounds (2,2)" in out


def test_bounds_negative_with_search(capsys):
    code, rec = run_json(capsys, "bounds", "--coeffs", "1,1", "--shift", "-1", "--colors", "3", "--search")
    assert code == 0
    assert rec["lower"]["value"] == rec["upper"]["value"] == 27 and rec["closed"]


def test_bounds_rejects_homogeneous(capsys):
    code, _, err = run(capsys, "bounds", "--coeffs", "1,1", "--shift", "0")
    assert code == 2 and "non-zero shift" in err


def test_excellence(capsys, tmp_path):
    code, rec = run_json(capsys, "excellence", "--coeffs", "1,1", "--colors", "2", "--store", str(tmp_path))
    assert code == 0 and rec["value"] == 4 and rec["witness"] == "1 2 2 1"
    assert (tmp_path / "excellent_c1-1_t2_n4.json").exists()


def test_conjecture(capsys):
    code, rec = run_json(capsys, "conjecture", "--coeffs", "1,1", "--colors", "2", "--shifts=-2,-1,3", "--cap", "40")
    assert code == 0 and rec["verdict"] == "agree"
    assert [r["searched"] for r in rec["rows"]] == [13, 9, 3]


def test_conjecture_inconclusive(capsys):
    code, rec = run_json(capsys, "conjecture", "--coeffs", "1,1", "--colors", "2", "--shifts=-2", "--cap", "10")
    assert code == 3 and rec["verdict"] == "inconclusive"


def test_reproduce_basics(capsys, tmp_path):
    csv_path = tmp_path / "t.csv"
    code, out, _ = run(capsys, "reproduce", "--scope", "basics", "--store", str(tmp_path / "s"),
                       "--csv", str(csv_path))
    assert code == 0
    assert "| match |" in out or "match" in out
    assert csv_path.read_text().startswith("scope,")


@pytest.mark.parametrize("argv", [
    [],
    ["search", "--coeffs", "1,1"],
    ["search", "--coeffs", "1,x", "--colors", "2"],
    ["search", "--coeffs", "1,1", "--colors", "0"],
    ["search", "--coeffs", "1,1", "--colors", "2", "--budget", "ten"],
    ["verify", "--coeffs", "1,1"],
    ["reproduce", "--scope", "nowhere"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "usage:" in err


def test_verify_color_out_of_range(capsys):
    code, _, err = run(capsys, "verify", "--coeffs", "1,1", "--colors", "2", "--coloring", "1 3")
    assert code == 2 and "error" in err


def test_parse_budget():
    assert parse_budget("600") == 600
    assert parse_budget("600s") == 600
    assert parse_budget("10m") == 600
    assert parse_budget("1.5h") == 5400


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "radosearch", "search", "--coeffs", "1,1", "--colors", "2"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0 and "Exact 5" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "radosearch", "search"], capture_output=True, text=True, timeout=120)
    assert proc.returncode == 2 and "usage:" in proc.stderr
