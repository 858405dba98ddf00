"""JSON instance files.

::

    {"name": "box",
     "A": [[2, 0, -1, 0], [0, 2, 0, -1]],
     "b": [1, 1],
     "c": [3, 3, 0, 0],
     "int_set": [1, 2],
     "assume_integer_value": false,
     "oracle_bounds": {"1": [0, 1], "2": [0, 1]}}

Numbers may be JSON integers or strings such as ``"-3"`` or ``"1/2"``;
``int_set`` and the ``oracle_bounds`` keys are 1-based row indices.  All of
``A``, ``b`` and ``c`` must be integral.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from dualgmi import exactnum as xn
from dualgmi.reformulate import DualFormMIP, ValidationError

KEYS = ("name", "A", "b", "c", "int_set", "assume_integer_value", "oracle_bounds")


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class InstanceFile:
    inst: DualFormMIP
    name: str | None = None
    assume_integer_value: bool = False
    oracle_bounds: dict[int, tuple[int, int]] | None = None  # 0-based row -> (lo, hi)


def _number(value, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise ValidationError(f"{where}: {value!r} is not an exact integer")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return xn.parse_rational(value)
        except ValueError as exc:
            raise ParseError(f"{where}: {exc}") from None
    raise ParseError(f"{where}: expected a number, got {type(value).__name__}")


def _integer(value, where: str) -> int:
    q = _number(value, where)
    if not xn.is_integral(q):
        raise ValidationError(f"{where} must be integral, got {q}")
    return int(q)


def _list(value, where: str) -> list:
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected an array")
    return value


def parse_bounds(raw, m: int, where: str = "oracle_bounds") -> dict[int, tuple[int, int]]:
    if isinstance(raw, dict) and "oracle_bounds" in raw:
        raw = raw["oracle_bounds"]
    if not isinstance(raw, dict):
        raise ParseError(f"{where}: expected an object keyed by 1-based row index")
    bounds = {}
    for key, pair in raw.items():
        try:
            i = int(key)
        except ValueError:
            raise ParseError(f"{where}: key {key!r} is not an index") from None
        if not 1 <= i <= m:
            raise ValidationError(f"{where}: index {i} outside 1..{m}")
        pair = _list(pair, f"{where}[{key}]")
        if len(pair) != 2:
            raise ParseError(f"{where}[{key}]: expected [lo, hi]")
        lo, hi = (_integer(v, f"{where}[{key}]") for v in pair)
        bounds[i - 1] = (lo, hi)
    return bounds


def loads(text: str, source: str = "<string>") -> InstanceFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ParseError(f"{source}: top level must be an object")
    unknown = set(data) - set(KEYS)
    if unknown:
        raise ParseError(f"{source}: unknown keys {sorted(unknown)}")
    for key in ("A", "b", "c", "int_set"):
        if key not in data:
            raise ParseError(f"{source}: missing key {key!r}")

    rows = _list(data["A"], "A")
    A = [[_integer(v, f"A[{k}][{j}]") for j, v in enumerate(_list(row, f"A[{k}]"))]
         for k, row in enumerate(rows)]
    b = [_integer(v, f"b[{k}]") for k, v in enumerate(_list(data["b"], "b"))]
    c = [_integer(v, f"c[{j}]") for j, v in enumerate(_list(data["c"], "c"))]
    if len({len(row) for row in A}) > 1:
        raise ValidationError("A: rows have different lengths")
    int_list = [_integer(v, f"int_set[{k}]") for k, v in enumerate(_list(data["int_set"], "int_set"))]
    if not int_list:
        raise ValidationError("int_set must be nonempty")
    if len(set(int_list)) != len(int_list):
        raise ValidationError("int_set has repeated indices")
    if not all(1 <= i <= len(A) for i in int_list):
        raise ValidationError(f"int_set entries must lie in 1..{len(A)}")

    inst = DualFormMIP.create(A, b, c, {i - 1 for i in int_list})
    name = data.get("name")
    if name is not None and not isinstance(name, str):
        raise ParseError("name must be a string")
    assume = data.get("assume_integer_value", False)
    if not isinstance(assume, bool):
        raise ParseError("assume_integer_value must be true or false")
    bounds = None
    if data.get("oracle_bounds") is not None:
        bounds = parse_bounds(data["oracle_bounds"], inst.m)
    return InstanceFile(inst, name, assume, bounds)


def parse_instance(path: str | Path) -> InstanceFile:
    path = Path(path)
    return loads(path.read_text(), str(path))


def to_dict(instance: InstanceFile) -> dict:
    inst = instance.inst
    data = {}
    if instance.name is not None:
        data["name"] = instance.name
    data["A"] = [[int(v) for v in row] for row in inst.A]
    data["b"] = [int(v) for v in inst.b]
    data["c"] = [int(v) for v in inst.c]
    data["int_set"] = sorted(i + 1 for i in inst.int_set)
    data["assume_integer_value"] = instance.assume_integer_value
    if instance.oracle_bounds is not None:
        data["oracle_bounds"] = {str(i + 1): list(instance.oracle_bounds[i])
                                 for i in sorted(instance.oracle_bounds)}
    return data


def dumps(instance: InstanceFile) -> str:
    """Canonical text; ``dumps(loads(dumps(x))) == dumps(x)``."""
    return json.dumps(to_dict(instance), indent=None) + "\n"
