"""Machine-readable check reports.

A Report is a flat list of named checks.  Each check states the law it
verified, whether it passed, and either a numeric residual (sampled
identities) or the offending coefficient (exact identities).  Exit-code
truth for the CLI is derived from Report.passed only.
"""

from __future__ import annotations

from dataclasses import dataclass, field


SCHEMA = "g2kit/1"


@dataclass
class Check:
    name: str
    law: str
    passed: bool
    residual: float | None = None
    details: str | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "law": self.law, "passed": self.passed}
        if self.residual is not None:
            out["residual"] = self.residual
        if self.details is not None:
            out["details"] = self.details
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Check":
        return cls(
            name=data["name"],
            law=data["law"],
            passed=data["passed"],
            residual=data.get("residual"),
            details=data.get("details"),
        )


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, law, passed, residual=None, details=None) -> Check:
        check = Check(name, law, bool(passed), residual, details)
        self.checks.append(check)
        return check

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(
                Check(prefix + c.name, c.law, c.passed, c.residual, c.details)
            )
        for k, v in other.meta.items():
            self.meta.setdefault(k, v)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "title": self.title,
            "passed": self.passed,
            "meta": self.meta,
            "checks": [c.to_json() for c in self.checks],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Report":
        rep = cls(title=data["title"], meta=dict(data.get("meta", {})))
        rep.checks = [Check.from_json(c) for c in data.get("checks", [])]
        return rep

    def to_text(self) -> str:
        lines = [f"== {self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for k, v in sorted(self.meta.items()):
            lines.append(f"   [{k}: {v}]")
        for c in self.checks:
            mark = "ok " if c.passed else "FAIL"
            extra = ""
            if c.residual is not None:
                extra = f"  residual={c.residual:.3e}"
            lines.append(f" {mark} {c.name}: {c.law}{extra}")
            if c.details and not c.passed:
                lines.append(f"      {c.details}")
        return "\n".join(lines)
