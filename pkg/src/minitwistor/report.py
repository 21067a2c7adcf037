"""Structured pass/fail records shared by every verification suite."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else value.numerator
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    return str(value)


@dataclass(frozen=True)
class Entry:
    claim_id: str
    expected: Any
    computed: Any

    @property
    def passed(self) -> bool:
        return self.expected == self.computed

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "expected": _jsonable(self.expected),
            "computed": _jsonable(self.computed),
            "pass": self.passed,
        }

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"{mark} {self.claim_id}: expected={_jsonable(self.expected)} computed={_jsonable(self.computed)}"


@dataclass
class VerificationReport:
    """Ordered list of checks; an entry passes iff expected == computed exactly."""

    entries: list[Entry] = field(default_factory=list)

    def check(self, claim_id: str, expected: Any, computed: Any) -> bool:
        e = Entry(claim_id, expected, computed)
        self.entries.append(e)
        return e.passed

    def extend(self, other: "VerificationReport", prefix: str = "") -> "VerificationReport":
        for e in other.entries:
            self.entries.append(Entry(prefix + e.claim_id, e.expected, e.computed))
        return self

    @property
    def n_pass(self) -> int:
        return sum(e.passed for e in self.entries)

    @property
    def n_fail(self) -> int:
        return len(self.entries) - self.n_pass

    @property
    def ok(self) -> bool:
        return self.n_fail == 0

    def failures(self) -> list[Entry]:
        return [e for e in self.entries if not e.passed]

    def __getitem__(self, claim_id: str) -> Entry:
        for e in self.entries:
            if e.claim_id == claim_id:
                return e
        raise KeyError(claim_id)

    def __contains__(self, claim_id: str) -> bool:
        return any(e.claim_id == claim_id for e in self.entries)

    def to_dict(self) -> dict:
        return {
            "entries": [e.to_dict() for e in self.entries],
            "pass": self.n_pass,
            "fail": self.n_fail,
            "failures": self.n_fail,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        lines = [e.line() for e in self.entries]
        lines.append(f"pass={self.n_pass} fail={self.n_fail}")
        return "\n".join(lines)
