import csv
import io
import json

import pytest

from suzuki_chars.cli import main
from suzuki_chars.serialize import loads_json

A231 = ["--family", "A", "--p", "2", "--m", "3", "--l", "1"]


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_table_json(capsys):
    code, out, _ = run(["table"] + A231, capsys)
    assert code == 0
    doc = json.loads(out)
    assert len(doc["classes"]) == 22 and len(doc["characters"]) == 22
    assert doc["metadata"]["modulus"] == [1, 0, 1, 1]
    assert doc["metadata"]["root_order"] == 4
    assert all(len(v) == 4 for v in doc["characters"][5]["values"])


def test_table_csv(capsys):
    code, out, _ = run(["table"] + A231 + ["--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][:3] == ["character", "degree", "0:0"]
    assert rows[1][0] == "class_size" and sum(int(x) for x in rows[1][2:]) == 64
    assert len(rows) == 2 + 22 and all(len(r) == 24 for r in rows)


def test_degrees_present_for_d(capsys):
    code, out, _ = run(["table", "--family", "D", "--p", "2", "--m", "4", "--l", "1", "--epsilon", "0"], capsys)
    assert code == 0
    degs = {c["degree"] for c in json.loads(out)["characters"]}
    assert degs == {1, 2, 4, 8, 16}


def test_epsilon_forms_agree(capsys):
    base = ["table", "--family", "B", "--p", "2", "--m", "3", "--l", "1"]
    _, by_index, _ = run(base + ["--epsilon", "2"], capsys)
    _, by_list, _ = run(base + ["--epsilon", "0,1,0"], capsys)
    _, by_bracket, _ = run(base + ["--epsilon", "[0,1,0]"], capsys)
    assert by_index == by_list == by_bracket
    assert json.loads(by_index)["metadata"]["epsilon"] == [0, 1, 0]


def test_modulus_option(capsys):
    code, out, _ = run(["table"] + A231 + ["--modulus", "1,1,0,1"], capsys)
    assert code == 0
    assert json.loads(out)["metadata"]["modulus"] == [1, 1, 0, 1]
    code, _, err = run(["table"] + A231 + ["--modulus", "1,0,0,1"], capsys)
    assert code == 2 and "error" in err


@pytest.mark.parametrize("argv", [
    ["table", "--family", "A", "--p", "2", "--m", "3", "--l", "3"],
    ["table", "--family", "A", "--p", "4", "--m", "3", "--l", "1"],
    ["table", "--family", "B", "--p", "2", "--m", "3", "--l", "1"],
    ["table", "--family", "Q", "--p", "2", "--m", "3", "--l", "1"],
    ["table", "--family", "A", "--p", "2"],
    ["table", "--family", "B", "--p", "2", "--m", "3", "--l", "1", "--epsilon", "x"],
    ["verify", "--checks", "orth1"],
    ["verify"] + A231 + ["--checks", "nope"],
    [],
], ids=["theta1", "p-not-prime", "no-eps", "bad-family", "missing", "bad-eps", "no-group", "bad-check", "empty"])
def test_parameter_errors_exit_2(argv, capsys):
    code, _, _ = run(argv, capsys)
    assert code == 2


def test_theta_message(capsys):
    _, _, err = run(["table", "--family", "A", "--p", "2", "--m", "3", "--l", "3"], capsys)
    assert "θ = 1" in err


def test_classes(capsys):
    code, out, _ = run(["classes"] + A231, capsys)
    doc = json.loads(out)
    assert code == 0 and doc["count"] == 22 == doc["class_number_formula"]
    assert sum(c["size"] for c in doc["classes"]) == 64


def test_verify_group(capsys):
    code, out, _ = run(["verify"] + A231, capsys)
    assert code == 0
    assert out.count("PASS") == 6


def test_verify_reports_misclassified_group(capsys):
    code, out, _ = run(["verify", "--family", "B", "--p", "2", "--m", "2", "--l", "1", "--epsilon", "1"], capsys)
    assert code == 1
    assert "orth1: PASS" in out and "closedform: FAIL" in out
    assert "FAIL: first counterexample in profile" in out


def test_roundtrip_and_verify_input(tmp_path, capsys):
    path = tmp_path / "t.json"
    assert main(["table"] + A231 + ["--out", str(path)]) == 0
    T = loads_json(path.read_text())
    assert T.num_chars == 22
    report = tmp_path / "r.json"
    code, out, _ = run(["verify", "--input", str(path), "--report", str(report)], capsys)
    assert code == 0 and "document: PASS" in out
    rep = json.loads(report.read_text())
    assert [r["check"] for r in rep["reports"]][0] == "document"
    assert all("elapsed_ms" in r for r in rep["reports"])


def test_verify_input_detects_corruption(tmp_path, capsys):
    path = tmp_path / "t.json"
    main(["table"] + A231 + ["--out", str(path)])
    doc = json.loads(path.read_text())
    doc["characters"][9]["values"][5][0] += 1
    path.write_text(json.dumps(doc))
    code, out, _ = run(["verify", "--input", str(path), "--checks", "orth1,orth2"], capsys)
    assert code == 1
    assert "suspect entry at character 9, class 5" in out


def test_verify_input_detects_wrong_class_data(tmp_path, capsys):
    path = tmp_path / "t.json"
    main(["table"] + A231 + ["--out", str(path)])
    doc = json.loads(path.read_text())
    doc["classes"][3]["size"] += 1
    path.write_text(json.dumps(doc))
    code, out, _ = run(["verify", "--input", str(path)], capsys)
    assert code == 1 and "document: FAIL" in out


@pytest.mark.parametrize("content", ["{not json", json.dumps({"metadata": {}}),
                                     json.dumps({"metadata": {"family": "A", "p": 2, "m": 3, "l": 1},
                                                 "classes": [], "characters": [[1]]})])
def test_bad_input_exit_3(tmp_path, capsys, content):
    path = tmp_path / "bad.json"
    path.write_text(content)
    code, _, err = run(["verify", "--input", str(path)], capsys)
    assert code == 3 and "error" in err


def test_missing_input_exit_3(tmp_path, capsys):
    code, _, _ = run(["verify", "--input", str(tmp_path / "absent.json")], capsys)
    assert code == 3


def test_unwritable_output_exit_3(tmp_path, capsys):
    code, _, _ = run(["table"] + A231 + ["--out", str(tmp_path / "no" / "such" / "dir.json")], capsys)
    assert code == 3


def test_non_canonical_values_rejected(tmp_path, capsys):
    path = tmp_path / "t.json"
    main(["table"] + A231 + ["--out", str(path)])
    doc = json.loads(path.read_text())
    doc["characters"][1]["values"][0] = [2, 0, 1, 0]
    path.write_text(json.dumps(doc))
    code, _, _ = run(["verify", "--input", str(path)], capsys)
    assert code == 3


def test_deterministic_bytes(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["table", "--family", "C", "--p", "3", "--m", "2", "--l", "1", "--epsilon", "0"]
    main(argv + ["--out", str(a)])
    main(argv + ["--out", str(b)])
    assert a.read_bytes() == b.read_bytes()
