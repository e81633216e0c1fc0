import csv
import io
import json
import subprocess
import sys

import pytest

from holovar.cli import EXIT_CERT, EXIT_INPUT, EXIT_OK, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_fi_table_small(capsys):
    code, out, _ = run(capsys, "fi-table", "--n-max", "2", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows[0] == {"n": "1", "f1": "", "f2": "", "f3": "-8/105"}
    assert rows[1] == {"n": "2", "f1": "16/1155", "f2": "16/1155", "f3": "-8/385"}


def test_fi_table_reaches_f2_at_6(capsys):
    _, out, _ = run(capsys, "fi-table", "--n-max", "6")
    rows = json.loads(out)["results"]
    assert rows[5]["f2"] == "38308/181081875"


def test_fi_table_empty(capsys):
    code, out, _ = run(capsys, "fi-table", "--n-max", "0")
    assert code == EXIT_OK and json.loads(out)["results"] == []


def test_cache_is_reused(capsys, tmp_path):
    run(capsys, "fi-table", "--n-max", "8", "--cache-dir", str(tmp_path))
    _, out, _ = run(capsys, "fi-table", "--n-max", "8", "--cache-dir", str(tmp_path))
    assert json.loads(out)["cache_hits"] > 0
    assert len(list(tmp_path.glob("fvalues-*.csv"))) == 1


def test_classify_report(capsys):
    code, out, _ = run(capsys, "classify", "-20,105/2,-42,21/2")
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["results"]["verdict"] == "non-integrable"
    assert rep["results"]["obstruction"]["order"] == 3


def test_classify_explicit_separator(capsys):
    code, out, _ = run(capsys, "classify", "--", "-20,105/2,-42,21/2")
    assert code == EXIT_OK
    assert json.loads(out)["results"]["obstruction"]["order"] == 3


def test_classify_strict_flag(capsys):
    _, out, _ = run(capsys, "classify", "1,-2,1,0", "--strict-meromorphy")
    assert json.loads(out)["results"]["verdict"] == "open"


def test_bad_input_exit_code(capsys):
    code, _, err = run(capsys, "classify", "1,2,x")
    assert code == EXIT_INPUT and "input error" in err
    assert run(capsys, "fi-table", "--n-max", "-3")[0] == EXIT_INPUT


def test_diophantine_default_and_inapplicable(capsys):
    _, out, _ = run(capsys, "diophantine")
    assert json.loads(out)["results"]["points"] == [[0, 0], [6, 14]]
    _, out, _ = run(capsys, "diophantine", "--curve", "k1 - k2")
    assert json.loads(out)["results"]["status"] == "method inapplicable"


def test_small_n0_certification_failure(capsys):
    code, out, err = run(capsys, "certify", "--n0", "10")
    assert code == EXIT_CERT
    diag = json.loads(err)
    assert diag["error"] == "certification failure" and diag["n0"] == 10


def test_bounded_reproduction_is_labelled(capsys):
    code, out, _ = run(capsys, "reproduce-main2", "--k-limit", "20")
    rep = json.loads(out)["results"]
    assert code == EXIT_OK
    assert rep["status"] == "bounded-scan only, no certified tail"


def test_reports_are_deterministic(capsys, tmp_path):
    a = run(capsys, "classify", "1,3,3,1", "--cache-dir", str(tmp_path))[1]
    b = run(capsys, "classify", "1,3,3,1", "--cache-dir", str(tmp_path))[1]
    assert a == b


def test_output_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    run(capsys, "classify", "0,1,0,1", "--output", str(target))
    assert json.loads(target.read_text())["results"]["family"] == "az+bz^3"


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "holovar", "classify", "1,0,0,0"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0
    assert json.loads(r.stdout)["results"]["family"] == "a"


def test_no_floats_in_reports(capsys):
    _, out, _ = run(capsys, "classify", "-20,105/2,-42,21/2")

    def walk(x):
        if isinstance(x, float):
            raise AssertionError(f"float in report: {x}")
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        if isinstance(x, list):
            for v in x:
                walk(v)
    walk(json.loads(out))
