"""Check records and the JSON report format."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable

from . import __version__

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["version", "command", "inputs", "checks", "elapsed_ms"],
    "additionalProperties": False,
    "properties": {
        "version": {"type": "string"},
        "command": {"type": "string"},
        "inputs": {"type": "object"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "expected", "actual", "status"],
                "additionalProperties": False,
                "properties": {
                    "name": {"type": "string"},
                    "expected": {},
                    "actual": {},
                    "status": {"enum": [PASS, FAIL, SKIPPED]},
                },
            },
        },
        "elapsed_ms": {"type": "number"},
    },
}


@dataclass(frozen=True)
class Check:
    name: str
    expected: Any
    actual: Any
    status: str

    @classmethod
    def compare(cls, name: str, expected: Any, actual: Any) -> "Check":
        return cls(name, expected, actual, PASS if expected == actual else FAIL)

    @classmethod
    def skipped(cls, name: str, reason: str) -> "Check":
        return cls(name, None, reason, SKIPPED)

    @classmethod
    def info(cls, name: str, actual: Any) -> "Check":
        return cls(name, None, actual, PASS)

    def as_dict(self) -> dict:
        return {"name": self.name, "expected": self.expected,
                "actual": self.actual, "status": self.status}


@dataclass
class TableReport:
    """Row-level outcome of a sweep; ``passed`` ignores skipped rows."""

    title: str
    checks: list[Check] = field(default_factory=list)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, checks: Iterable[Check]):
        self.checks.extend(checks)

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.status == FAIL]


@dataclass
class Report:
    command: str
    inputs: dict
    checks: list[Check] = field(default_factory=list)
    elapsed_ms: float = 0.0
    version: str = __version__

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "version": self.version,
            "command": self.command,
            "inputs": self.inputs,
            "checks": [c.as_dict() for c in self.checks],
            "elapsed_ms": round(self.elapsed_ms, 3),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def checks_json(self) -> str:
        """The checks array alone, serialized deterministically."""
        return json.dumps([c.as_dict() for c in self.checks], sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        data = json.loads(text)
        checks = [Check(c["name"], c["expected"], c["actual"], c["status"]) for c in data["checks"]]
        return cls(data["command"], data["inputs"], checks, data["elapsed_ms"], data["version"])

    def to_text(self) -> str:
        rows = [("status", "check", "expected", "actual")]
        for c in self.checks:
            rows.append((c.status, c.name, _short(c.expected), _short(c.actual)))
        widths = [max(len(r[k]) for r in rows) for k in range(3)]
        out = [f"{self.command}  " + " ".join(f"{k}={v}" for k, v in sorted(self.inputs.items()))]
        for r in rows:
            out.append("  ".join(r[k].ljust(widths[k]) for k in range(3)) + "  " + r[3])
        n_fail = sum(c.status == FAIL for c in self.checks)
        n_skip = sum(c.status == SKIPPED for c in self.checks)
        out.append(f"{len(self.checks)} checks, {n_fail} failed, {n_skip} skipped")
        return "\n".join(out) + "\n"


def _short(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, str):
        return v
    return json.dumps(v, sort_keys=True, ensure_ascii=False)
