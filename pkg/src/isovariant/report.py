from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    """Outcome of an exhaustive verification run."""

    name: str
    passed: bool = True
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)
    max_failures: int = 20

    def check(self, ok: bool, message) -> bool:
        self.checks += 1
        if not ok:
            self.passed = False
            if len(self.failures) < self.max_failures:
                self.failures.append(message() if callable(message) else str(message))
        return ok

    def fail(self, message: str):
        self.passed = False
        if len(self.failures) < self.max_failures:
            self.failures.append(message)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {self.name}: {self.checks} checks"
        if self.details:
            line += " (" + ", ".join(f"{k}={v}" for k, v in self.details.items()) + ")"
        return line

    def __bool__(self):
        return self.passed
