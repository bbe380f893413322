"""Verification reports: an ordered list of named checks with witnesses.

Every ``verify_*`` function returns one of these instead of raising on the
first failure, so a report can show all broken axioms of a fixture at once.
Witnesses are plain dicts keyed by role (e.g. ``{"b": "1", "a": "x"}``) so they
serialize directly into the CLI's JSON output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable

MAX_WITNESSES = 8


@dataclass
class Check:
    name: str
    passed: bool
    witnesses: list[dict[str, Any]] = field(default_factory=list)
    violation_count: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "witnesses": _jsonable(self.witnesses),
            "violation_count": self.violation_count,
        }


class VerificationReport:
    def __init__(self, subject: str = ""):
        self.subject = subject
        self.checks: list[Check] = []
        # free-form derived facts (classification labels, tables, masses...)
        self.facts: dict[str, Any] = {}

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def record(self, name: str, violations: Iterable[dict[str, Any]]) -> Check:
        """Close out one named check; empty ``violations`` means it passed."""
        vs = list(violations)
        check = Check(name, not vs, vs[:MAX_WITNESSES], len(vs))
        self.checks.append(check)
        return check

    def get(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def has(self, name: str) -> bool:
        return any(c.name == name for c in self.checks)

    def merge(self, other: "VerificationReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(
                Check(prefix + c.name, c.passed, c.witnesses, c.violation_count)
            )
        for key, value in other.facts.items():
            self.facts.setdefault(prefix + key if prefix else key, value)

    def to_dict(self) -> dict[str, Any]:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "checks": [c.to_dict() for c in self.checks],
            "facts": _jsonable(self.facts),
        }

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            mark = "pass" if c.passed else "FAIL"
            line = f"  [{mark}] {c.name}"
            if not c.passed:
                line += f"  ({c.violation_count} violation"
                line += "s)" if c.violation_count != 1 else ")"
                for w in c.witnesses[:3]:
                    line += "\n         witness: " + _fmt_witness(w)
            out.append(line)
        return out

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        state = "ok" if self.ok else "FAILED"
        return f"<VerificationReport {self.subject!r} {state} checks={len(self.checks)}>"


def _fmt_witness(w: dict[str, Any]) -> str:
    return ", ".join(f"{k}={v!r}" for k, v in w.items())


def _jsonable(value: Any) -> Any:
    """Best-effort conversion of facts to JSON-friendly types."""
    import numpy as np

    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value, key=repr) if isinstance(value, (set, frozenset)) else value
        return [_jsonable(v) for v in items]
    if isinstance(value, np.ndarray):
        if np.iscomplexobj(value):
            return [_jsonable(v) for v in value.tolist()]
        return value.tolist()
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, complex):
        return [value.real, value.imag]
    return value
