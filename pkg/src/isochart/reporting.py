"""Pass/fail reports shared by the verification suites."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple


@dataclass
class Report:
    name: str
    checks: List[Tuple[str, bool, str]] = field(default_factory=list)

    def check(self, label: str, ok: bool, detail: str = "") -> bool:
        self.checks.append((label, bool(ok), detail))
        return bool(ok)

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    @property
    def first_failure(self) -> Optional[Tuple[str, str]]:
        for label, ok, detail in self.checks:
            if not ok:
                return (label, detail)
        return None

    def lines(self) -> List[str]:
        out = []
        for label, ok, detail in self.checks:
            status = "PASS" if ok else "FAIL"
            suffix = f"  [{detail}]" if detail else ""
            out.append(f"{status} {self.name}: {label}{suffix}")
        return out

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} ({sum(1 for _, ok, _ in self.checks if ok)}/{len(self.checks)} checks)"


__all__ = ["Report"]
