import json

import numpy as np
import pytest

from bidisc.cli import main
from bidisc.report import CheckRow, dumps, emit_report, rows_to_csv


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gram_zero_is_identity(capsys):
    code, out, _ = run(capsys, "gram", "--basis", "2", "1")
    assert code == 0
    doc = json.loads(out)
    E = np.array(doc["result"]["entries"])[..., 0]
    assert np.array_equal(E, np.eye(6))
    assert list(doc) == ["command", "meta", "result", "checks", "summary"]


def test_koszul_origin(capsys):
    code, out, _ = run(capsys, "koszul", "--measure1", "catalog:atoms2", "--lambda", "0,0,0,0")
    doc = json.loads(out)
    assert code == 0
    assert doc["result"]["index"] == 1
    assert doc["result"]["dims"] == [0, 0, 1]


def test_toral_anchor(capsys):
    _, out, _ = run(capsys, "toral-check", "--measure1", "catalog:lebesgue1")
    rows = json.loads(out)["checks"]
    assert {r["paper_anchor"] for r in rows} == {"Eq. C1"}
    assert set(rows[0]) == {"name", "paper_anchor", "value", "tolerance", "pass", "window"}


def test_richter_anchor(capsys):
    code, out, _ = run(capsys, "richter-check", "--measure1", "catalog:trig0.4", "--measure2", "catalog:mixture")
    assert code == 0
    assert all(r["paper_anchor"] == "formula-Richter" for r in json.loads(out)["checks"])


@pytest.mark.parametrize("cmd", ["oracle-compare", "moment-check", "wandering-check", "kernel", "adjoint-kernel",
                                 "gleason", "recover-moments", "reconstruct-orbit", "verify-pair"])
def test_commands_pass(capsys, cmd):
    code, out, err = run(capsys, cmd, "--basis", "3", "3", "--measure1", "catalog:mixture",
                         "--measure2", "catalog:trig0.4", "--lambda", "0.1,0.2,-0.3,0")
    assert code == 0, err
    assert json.loads(out)["summary"]["failed"] == 0


def test_measure_and_poly_files(tmp_path, capsys):
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"type": "atoms", "atoms": [{"angle": 0.0, "mass": 1.0}]}))
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"deg": [1, 1], "coeffs": [[[0, 0], [1, 0]], [[0, 0], [2, 0]]]}))
    code, out, _ = run(capsys, "oracle-compare", "--measure1", str(m), "--poly", str(p))
    doc = json.loads(out)
    assert code == 0
    assert set(doc["result"]) == {"value", "tail_bound", "gram_value"}


def test_validation_errors_exit_2(capsys, tmp_path):
    assert run(capsys, "gram", "--tol", "richter=-1")[0] == 2
    assert run(capsys, "gram", "--measure1", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "kernel", "--lambda", "1,0,0,0")[0] == 2
    code, _, err = run(capsys, "gram", "--measure1", '{"type":"lebesgue","mass":-2}')
    assert code == 2 and "mass" in err


def test_failed_check_exit_1(tmp_path, capsys):
    pair = {"T1": [[0, 0], [1, 0]], "T2": [[0, 0], [1, 0]], "f0": [1, 0]}
    f = tmp_path / "pair.json"
    f.write_text(json.dumps(pair))
    code, out, err = run(capsys, "verify-pair", "--pair", str(f))
    assert code == 1
    assert "assumption-k-condition-1" in err
    assert "assumption-k-condition-2" in err


def test_corrupted_gram_file(tmp_path, capsys):
    _, out, _ = run(capsys, "gram", "--basis", "3", "3", "--measure1", "catalog:lebesgue1")
    doc = json.loads(out)["result"]
    doc["entries"][5][9] = [0.5, 0]
    doc["entries"][9][5] = [0.5, 0]
    f = tmp_path / "g.json"
    f.write_text(json.dumps(doc))
    code, _, err = run(capsys, "recover-moments", "--gram", str(f))
    assert code == 1
    assert "inner-p-formula" in err


def test_csv_output(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "toral-check", "--out", str(out), "--csv")
    assert code == 0
    lines = (tmp_path / "r.csv").read_text().splitlines()
    assert lines[0] == "name,paper_anchor,value,tolerance,pass"
    assert len(lines) == 5


def test_report_format():
    rows = [CheckRow("a", "X", 0.1, 1.0), CheckRow("b", "Y", 2.0, 1.0), CheckRow("c", "Z", None, None, passed=None)]
    doc = emit_report("demo", rows, {"x": 1 / 3})
    text = dumps(doc)
    assert "0.33333333333333331" in text
    assert doc["summary"] == {"total": 3, "passed": 1, "failed": 1, "not_evaluated": 1, "failing": ["b"]}
    assert "not evaluated" in rows_to_csv(rows)
    assert json.loads(text)["checks"][2]["pass"] is None
