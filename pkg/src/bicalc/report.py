"""Pass/fail records shared by the identity and verification suites."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_document(self) -> dict:
        doc = {"name": self.name, "passed": self.passed}
        if self.detail:
            doc["detail"] = self.detail
        return doc


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> Check:
        chk = Check(name, bool(passed), detail)
        self.checks.append(chk)
        return chk

    def extend(self, other: "Report", prefix: str = ""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.detail))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def to_document(self) -> dict:
        return {
            "title": self.title,
            "passed": self.passed,
            "checks": [c.to_document() for c in self.checks],
        }

    def lines(self) -> list[str]:
        return [
            f"{'PASS' if c.passed else 'FAIL'}  {c.name}" + (f"  ({c.detail})" if c.detail else "")
            for c in self.checks
        ]
