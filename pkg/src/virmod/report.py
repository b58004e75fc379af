"""Verification report records and their JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass
class Case:
    name: str
    passed: bool
    detail: str | None = None
    witness: Any = None  # JSON-ready, usually an element's to_json()

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"name": self.name, "pass": self.passed}
        if self.detail is not None:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class VerifyReport:
    """Outcome of one suite. ``passed`` holds iff every case passed."""

    suite: str
    params: dict
    cases: list[Case] = field(default_factory=list)
    witness: Any = None
    note: str | None = None

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def add(self, name: str, passed: bool, detail: str | None = None, witness=None) -> Case:
        case = Case(name, bool(passed), detail, witness)
        self.cases.append(case)
        if not passed and self.witness is None and witness is not None:
            self.witness = witness
        return case

    def failures(self) -> list[Case]:
        return [c for c in self.cases if not c.passed]

    def to_dict(self) -> dict:
        out: dict[str, Any] = {
            "suite": self.suite,
            "params": self.params,
            "cases": [c.to_dict() for c in self.cases],
            "pass": self.passed,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note is not None:
            out["note"] = self.note
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def summary(self) -> str:
        n_ok = sum(c.passed for c in self.cases)
        status = "PASS" if self.passed else "FAIL"
        line = f"[{status}] {self.suite}: {n_ok}/{len(self.cases)} cases"
        if self.note:
            line += f" ({self.note})"
        return line
