"""Check/report records shared by the verification routines and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

VERSION = "0.1.0"


@dataclass
class Check:
    name: str
    passed: bool
    witness: object = None

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self):
        return {"name": self.name, "status": self.status, "witness": to_jsonable(self.witness)}


@dataclass
class Report:
    """A batch of named checks plus free-form results."""

    command: str
    q: object = None
    results: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    seed: int = 0
    timings: dict = field(default_factory=dict)

    def check(self, name: str, passed: bool, witness=None) -> bool:
        self.checks.append(Check(name, bool(passed), None if passed else witness))
        return bool(passed)

    def extend(self, other: "Report", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness))

    @property
    def failures(self) -> list:
        return [c for c in self.checks if not c.passed]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self):
        out = {
            "command": self.command,
            "q": self.q,
            "results": to_jsonable(self.results),
            "checks": [c.to_dict() for c in self.checks],
            "seed": self.seed,
            "version": VERSION,
        }
        if self.timings:
            out["timings"] = {k: round(v, 3) for k, v in self.timings.items()}
        return out

    def to_json(self) -> str:
        return dumps(self.to_dict())


def to_jsonable(obj):
    """Exact values become strings ("p/q"); complex values become [re, im]."""
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else obj.numerator
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, complex):
        return {"approx": [float(f"{obj.real:.12g}"), float(f"{obj.imag:.12g}")]}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "tolist"):
        return to_jsonable(obj.tolist())
    return str(obj)


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False)
