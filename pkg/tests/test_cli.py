"""Command-line interface: exit codes, JSON schema, text output."""

import json

import pytest

from supportring.cli import main
from supportring.report import Report, dumps


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_mul_json(capsys):
    code, out, _ = run(capsys, "mul", "--q", "7", "--x", "B", "--y", "C", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["results"] == {"C": 6}
    assert set(data) == {"command", "q", "results", "checks", "seed", "version"}
    assert data["q"] == 7 and data["command"] == "mul"
    assert all(c["status"] in ("pass", "fail") for c in data["checks"])


def test_json_round_trip(capsys):
    code, out, _ = run(capsys, "idempotents", "--q", "5", "--format", "json")
    assert code == 0
    assert dumps(json.loads(out)) + "\n" == out
    data = json.loads(out)
    assert data["results"]["pi"]["pi1"]["A"] == "1/120"


@pytest.mark.parametrize("argv", [
    ["mul", "--q", "2", "--x", "B", "--y", "C"],
    ["mul", "--q", "6", "--x", "B", "--y", "C"],
    ["mul", "--q", "5", "--x", "Q", "--y", "C"],
    ["scheme", "--q", "3"],
    ["verify", "--q", "3,2"],
    ["verify", "--q", "x"],
    ["verify", "--q", "11"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_unknown_flag_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["mul", "--q", "5", "--bogus"])
    assert exc.value.code == 2


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify", "--q", "3,4,5", "--all", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["q"] == [3, 4, 5]
    assert data["results"]["failures"] == 0


@pytest.mark.parametrize("kind", ["table", "scheme"])
def test_verify_corrupt(capsys, kind):
    code, out, _ = run(capsys, "verify", "--q", "4", "--corrupt", kind, "--format", "json")
    assert code == 1
    data = json.loads(out)
    fails = [c for c in data["checks"] if c["status"] == "fail"]
    assert fails and any(c["witness"] for c in fails)


def test_scheme_corrupt_exit_one(capsys):
    code, _, _ = run(capsys, "scheme", "--q", "4", "--corrupt")
    assert code == 1


@pytest.mark.parametrize("argv", [
    ["classes", "--q", "5"],
    ["table", "--q", "4"],
    ["scheme", "--q", "5", "--variant", "tilde"],
    ["chars", "--q", "5"],
    ["fusion", "--q", "3"],
])
def test_commands_pass(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert "passed" in out


def test_text_and_json_agree(capsys):
    _, text, _ = run(capsys, "mul", "--q", "5", "--x", "C", "--y", "C")
    _, js, _ = run(capsys, "mul", "--q", "5", "--x", "C", "--y", "C", "--format", "json")
    res = json.loads(js)["results"]
    for k, v in res.items():
        assert f"{k}: {v}" in text


def test_out_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "fusion", "--q", "3", "--format", "json", "--out", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["command"] == "fusion"


def test_report_serialisation():
    from fractions import Fraction
    r = Report("x", 3, results={"f": Fraction(1, 3), "z": 1 + 2j, "n": Fraction(4)})
    d = json.loads(r.to_json())
    assert d["results"] == {"f": "1/3", "z": {"approx": [1.0, 2.0]}, "n": 4}
