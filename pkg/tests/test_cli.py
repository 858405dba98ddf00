import json

import pytest

from dualgmi import cli
from dualgmi.instance import ParseError, dumps, loads, parse_instance
from dualgmi.reformulate import ValidationError

BOX = {"name": "box", "A": [[2, 0, -1, 0], [0, 2, 0, -1]], "b": [1, 1], "c": [3, 3, 0, 0], "int_set": [1, 2]}


def write(tmp_path, data, name="inst.json"):
    path = tmp_path / name
    path.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(path)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_box(data_dir):
    inf = parse_instance(data_dir / "box.json")
    assert (inf.inst.m, inf.inst.n) == (2, 4)
    assert inf.inst.int_set == {0, 1}
    assert inf.name == "box"


@pytest.mark.parametrize("patch, match", [
    ({"b": ["1/2", 1]}, "integral"),
    ({"int_set": []}, "nonempty"),
    ({"int_set": [3]}, "1..2"),
    ({"c": [3, 3, 0]}, "c has length"),
    ({"A": [[2, 0, -1, 0], [0, 2, 0]]}, "different lengths"),
    ({"b": [1.0, 1]}, "exact integer"),
])
def test_validation_errors(patch, match):
    with pytest.raises(ValidationError, match=match):
        loads(json.dumps({**BOX, **patch}))


def test_parse_error_has_position():
    with pytest.raises(ParseError, match=r"f\.json:2:\d+"):
        loads('{"A": [[1]],\n "b": [1,, }', "f.json")
    with pytest.raises(ParseError, match="missing key 'c'"):
        loads(json.dumps({k: v for k, v in BOX.items() if k != "c"}))
    with pytest.raises(ParseError, match="b\\[0\\]"):
        loads(json.dumps({**BOX, "b": ["one", 1]}))


def test_round_trip_is_idempotent(data_dir):
    for path in sorted(data_dir.glob("*.json")):
        text = dumps(parse_instance(path))
        assert dumps(loads(text)) == text
    with_bounds = loads(json.dumps({**BOX, "b": ["1", "1"], "oracle_bounds": {"2": [0, 1], "1": [-1, 2]}}))
    text = dumps(with_bounds)
    assert dumps(loads(text)) == text
    assert with_bounds.oracle_bounds == {0: (-1, 2), 1: (0, 1)}


def test_solve_box(capsys, data_dir):
    code, out, _ = run(capsys, "solve", str(data_dir / "box.json"))
    assert code == 0
    assert json.loads(out) == {"name": "box", "status": "optimal", "value": "2", "y": ["1", "1"],
                               "iterations": 3, "pivots": 3}


def test_solve_mixed_has_fractional_y(capsys, data_dir):
    code, out, _ = run(capsys, "solve", str(data_dir / "mixed.json"))
    assert code == 0
    res = json.loads(out)
    assert (res["value"], res["y"]) == ("1", ["1", "3/2"])


def test_solve_infeasible_exit_code(capsys, data_dir):
    code, out, _ = run(capsys, "solve", str(data_dir / "half.json"))
    assert code == 2
    assert json.loads(out)["status"] == "infeasible"


def test_solve_limit_exit_code(capsys, data_dir):
    code, out, _ = run(capsys, "solve", str(data_dir / "box.json"), "--max-iter", "1")
    assert code == 3
    assert json.loads(out)["status"] == "limit_reached"


def test_value_integrality_flag(capsys, tmp_path):
    path = write(tmp_path, {**BOX, "int_set": [1]})
    code, _, err = run(capsys, "solve", path)
    assert code == 1
    assert "ValidationError" in err and "outside int_set" in err
    # the assumption is false here (optimum 5/2), which is also reported
    code, _, err = run(capsys, "solve", path, "--assume-integer-value")
    assert code == 1 and "not integral" in err
    good = write(tmp_path, {**BOX, "b": [1, 2], "int_set": [1]}, "good.json")
    code, out, _ = run(capsys, "solve", good, "--assume-integer-value")
    assert code == 0 and json.loads(out)["value"] == "4"


def test_verify_bounded(capsys, tmp_path):
    path = write(tmp_path, {"A": [[1]], "b": [1], "c": [1], "int_set": [1]})
    code, _, err = run(capsys, "solve", path, "--verify-bounded")
    assert code == 1 and "unbounded" in err


def test_solve_trace_file(capsys, tmp_path, data_dir):
    trace = tmp_path / "trace.jsonl"
    code, _, _ = run(capsys, "solve", str(data_dir / "box.json"), "--trace", str(trace))
    assert code == 0
    lines = [json.loads(line) for line in trace.read_text().splitlines()]
    cuts = [rec for rec in lines if rec["kind"] == "cut"]
    assert len(cuts) == 3
    assert [rec["t"] for rec in cuts] == [1, 2, 3]
    for rec in cuts:
        f = rec["f"]
        assert "." not in f
        assert rec["reduced_cost"].startswith("-")
    assert lines[-1]["kind"] == "result" and lines[-1]["value"] == "2"
    assert not any(rec["kind"] == "pivot" for rec in lines)


def test_trace_command_streams_pivots(capsys, data_dir):
    code, out, _ = run(capsys, "trace", str(data_dir / "box.json"))
    assert code == 0
    kinds = [json.loads(line)["kind"] for line in out.splitlines()]
    assert kinds.count("cut") == 3
    assert kinds.count("pivot") >= 3
    assert kinds[-1] == "result"


def test_lp_command(capsys, data_dir):
    code, out, _ = run(capsys, "lp", str(data_dir / "box.json"))
    assert code == 0
    res = json.loads(out)
    assert (res["value"], res["y"]) == ("3", ["3/2", "3/2"])


def test_oracle_command(capsys, tmp_path, data_dir):
    code, out, _ = run(capsys, "oracle", str(data_dir / "box.json"))
    assert code == 0
    res = json.loads(out)
    assert res["value"] == "2" and res["witness"] == ["1", "1"]
    bounds = write(tmp_path, {"1": [0, 0], "2": [0, 1]}, "bounds.json")
    code, out, _ = run(capsys, "oracle", str(data_dir / "box.json"), "--bounds", bounds)
    res = json.loads(out)
    assert (code, res["value"], res["assignments"]) == (0, "1", 2)
    code, out, _ = run(capsys, "oracle", str(data_dir / "half.json"))
    assert code == 2 and json.loads(out)["status"] == "infeasible"


def test_check_passes(capsys, data_dir):
    for name in ("box.json", "mixed.json", "half.json", "integral_lp.json"):
        code, out, _ = run(capsys, "check", str(data_dir / name))
        assert code == 0, out
        assert out.count(": pass") == 3


def test_check_catches_injected_cut(capsys, data_dir):
    code, out, _ = run(capsys, "check", str(data_dir / "box.json"), "--inject-bad-cut")
    assert code == 1
    assert "cut-validity: FAIL" in out
    # the offending iteration record follows
    assert any(line.startswith("{") and json.loads(line)["kind"] == "cut" for line in out.splitlines())


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "solve", str(tmp_path / "nope.json"))
    assert code == 1 and "error" in err
