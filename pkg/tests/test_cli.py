import json

import jsonschema
import pytest

from richsat.cli import parse_range, run
from richsat.report import REPORT_SCHEMA, Report


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_partition_text(capsys):
    code, out, _ = call(capsys, "partition", "--d", "1,2,1")
    assert (code, out) == (0, "[3,1]\n")


def test_quiver_dot_has_13_edges(capsys):
    code, out, _ = call(capsys, "quiver", "--d", "3,1,2,3", "--format", "dot")
    assert code == 0
    assert out.startswith("digraph Q {") and out.count("->") == 13


@pytest.mark.parametrize("argv,flag", [
    (["partition", "--d", "0,2"], "--d"),
    (["partition", "--d", "1,x"], "--d"),
    (["esub", "--d", "1,2,1", "--p", "4"], "--p"),
    (["verify", "--n", "9..3"], "--n"),
    (["verify", "--n", "4", "--tables", "3"], "--tables"),
    (["centralizer", "--d", "1,2,1", "--format", "dot"], "--format"),
    (["esub", "--d", "3,2,3,1", "--p", "11"], "--cap"),
    (["srk", "--d", "1,2,1", "--p", "2"], "--p"),
    (["batch", "--file", "/nonexistent/file", "--verb", "partition"], "--file"),
])
def test_usage_errors_exit_2(capsys, argv, flag):
    code, _, err = call(capsys, *argv)
    assert code == 2
    assert flag in err


def test_missing_verb(capsys):
    assert call(capsys)[0] == 2


def test_parse_range():
    assert parse_range("3..5") == [3, 4, 5]
    assert parse_range("7") == [7]


@pytest.mark.parametrize("argv", [
    ["quiver", "--d", "1,2,1", "--format", "json"],
    ["richardson", "--d", "3,2,3,1", "--format", "json"],
    ["centralizer", "--d", "2,2,1", "--format", "json"],
    ["esub", "--d", "1,2,1", "--p", "5", "--format", "json"],
    ["srk", "--d", "1,3,1", "--p", "5", "--format", "json"],
    ["verify", "--tables", "1", "--n", "3", "--format", "json"],
])
def test_json_reports_validate_and_roundtrip(capsys, argv):
    code, out, _ = call(capsys, *argv)
    data = json.loads(out)
    jsonschema.validate(data, REPORT_SCHEMA)
    assert Report.from_json(out).to_json() == out
    assert code == (0 if all(c["status"] != "fail" for c in data["checks"]) else 1)


def test_informational_verbs_pass(capsys):
    code, out, _ = call(capsys, "esub", "--d", "1,2,1", "--p", "5", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert {c["name"]: c["actual"] for c in data["checks"]}["count"] == 6


def test_text_report(capsys):
    code, out, _ = call(capsys, "srk", "--d", "1,2,1", "--p", "5")
    assert code == 0
    assert "srk" in out and "0 failed" in out


def test_out_path(tmp_path, capsys):
    target = tmp_path / "q.dot"
    code, out, _ = call(capsys, "quiver", "--d", "1,2,1", "--format", "dot", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().count("->") == 4


def test_batch(tmp_path, capsys):
    f = tmp_path / "vecs.txt"
    f.write_text("# two vectors and a bad one\n1,2,1\n\n0,2\n3,2,3,1\n", encoding="utf-8")
    code, out, _ = call(capsys, "batch", "--file", str(f), "--verb", "centralizer",
                        "--format", "json", "--jobs", "1")
    data = json.loads(out)
    jsonschema.validate(data, REPORT_SCHEMA)
    dims = {c["name"]: c["actual"] for c in data["checks"] if c["name"].endswith("/dim")}
    assert dims == {"line2/1,2,1/dim": 4, "line5/3,2,3,1/dim": 16}
    bad = [c for c in data["checks"] if c["name"] == "line4"]
    assert bad[0]["status"] == "fail" and "ParseError" in bad[0]["actual"]
    assert code == 1
    # order follows the file even with a worker pool
    code2, out2, _ = call(capsys, "batch", "--file", str(f), "--verb", "centralizer",
                          "--format", "json", "--jobs", "2")
    assert json.loads(out2)["checks"] == data["checks"]


def test_empty_batch(tmp_path, capsys):
    f = tmp_path / "empty.txt"
    f.write_text("", encoding="utf-8")
    code, out, _ = call(capsys, "batch", "--file", str(f), "--verb", "partition", "--format", "json")
    assert code == 0 and json.loads(out)["checks"] == []


def test_deterministic_checks(capsys):
    argv = ["verify", "--tables", "1,2", "--n", "4", "--p", "5", "--format", "json"]
    first = json.loads(call(capsys, *argv)[1])
    second = json.loads(call(capsys, *argv)[1])
    assert json.dumps(first["checks"], sort_keys=True) == json.dumps(second["checks"], sort_keys=True)
