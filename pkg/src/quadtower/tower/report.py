"""Check records and reports with a fixed JSON shape."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path


@dataclass
class SampleResult:
    sample: str
    passed: bool
    note: str = ""

    def to_json(self) -> dict:
        out = {"sample": self.sample, "pass": self.passed}
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class Check:
    name: str
    paper_ref: str
    passed: bool
    witness: object = None
    samples: list = field(default_factory=list)
    seconds: float = 0.0

    def to_json(self) -> dict:
        w = self.witness
        if hasattr(w, "to_json"):
            w = w.to_json()
        return {
            "check": self.name,
            "paper_ref": self.paper_ref,
            "pass": self.passed,
            "witness": w,
            "samples": [s.to_json() if hasattr(s, "to_json") else s for s in self.samples],
        }


@dataclass
class Report:
    checks: list = field(default_factory=list)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, other: Report) -> Report:
        self.checks.extend(other.checks)
        return self

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def by_name(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def lines(self) -> list[str]:
        width = max((len(c.name) for c in self.checks), default=0)
        return [f"{'PASS' if c.passed else 'FAIL'}  {c.name:<{width}}  ({c.paper_ref})  {c.seconds:.2f}s"
                for c in self.checks]

    def to_json(self) -> list:
        return [c.to_json() for c in sorted(self.checks, key=lambda c: c.name)]

    def write_json(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=2, default=str) + "\n")
