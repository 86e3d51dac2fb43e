"""Verification reports shared by the checkers and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
WARNING = "warning"

# exit codes
EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_VIOLATION = 3


@dataclass
class Check:
    id: str
    description: str
    verdict: str
    witness: str = ""
    violation: bool = field(default=False, compare=False)

    @property
    def ok(self) -> bool:
        return self.verdict != FAIL

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "description": self.description,
            "verdict": self.verdict,
            "witness": self.witness,
        }


@dataclass
class Report:
    command: str
    subject: str
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict, compare=False)

    def add(self, id: str, description: str, ok: bool, witness: str = "", *,
            soft: bool = False, violation: bool = False, always: bool = False) -> Check:
        """Append a check.

        ``soft`` downgrades a failure to a warning; the witness is kept on
        passing checks only when ``always`` is set.
        """
        if ok and not always:
            witness = ""
        if ok:
            verdict = PASS
        else:
            verdict = WARNING if soft else FAIL
        check = Check(id, description, verdict, witness, violation and not ok)
        self.checks.append(check)
        return check

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.id, c.description, c.verdict, c.witness, c.violation))

    def get(self, id: str) -> Check:
        for c in self.checks:
            if c.id == id:
                return c
        raise KeyError(id)

    @property
    def passed(self) -> bool:
        return all(c.verdict != FAIL for c in self.checks)

    @property
    def exit_code(self) -> int:
        if any(c.violation for c in self.checks):
            return EXIT_VIOLATION
        return EXIT_OK if self.passed else EXIT_FAIL

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "subject": self.subject,
            "checks": [c.to_dict() for c in self.checks],
            "exitCode": self.exit_code,
        }

    def to_text(self) -> str:
        lines = [f"{self.command} {self.subject}"]
        for c in self.checks:
            tag = {PASS: "PASS", FAIL: "FAIL", WARNING: "WARN"}[c.verdict]
            line = f"  [{tag}] {c.id}: {c.description}"
            if c.witness:
                line += f"\n         {c.witness}"
            lines.append(line)
        lines.append(f"exit {self.exit_code}")
        return "\n".join(lines)
