"""Violation reports shared by every identity check."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Violation:
    kind: str
    where: object
    detail: object = None

    def __str__(self):
        text = f"{self.kind} at {self.where}"
        if self.detail is not None:
            text += f": {self.detail}"
        return text


@dataclass
class ValidationReport:
    """An empty report means the checked property holds.

    ``checked`` counts the individual comparisons made, so a vacuous pass
    (nothing checked) is visible in the output.
    """

    name: str
    violations: list = field(default_factory=list)
    checked: int = 0
    notes: list = field(default_factory=list)

    def add(self, kind, where, detail=None):
        self.violations.append(Violation(kind, where, detail))

    def note(self, text):
        self.notes.append(text)

    def extend(self, other: "ValidationReport"):
        self.violations.extend(other.violations)
        self.checked += other.checked
        self.notes.extend(other.notes)
        return self

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def __len__(self):
        return len(self.violations)

    def summary(self) -> str:
        status = "pass" if self.ok else "fail"
        return f"CHECK {self.name} {status} {len(self.violations)}"

    def __str__(self):
        lines = [self.summary()]
        lines += [f"  {v}" for v in self.violations[:20]]
        if len(self.violations) > 20:
            lines.append(f"  ... {len(self.violations) - 20} more")
        return "\n".join(lines)
