from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

# counterexamples kept per law; the failure count is always exact
MAX_KEPT = 5


@dataclass
class Report:
    """Outcome of a randomized or exhaustive law check.

    ``checks`` counts evaluated instances per law id; ``failures`` keeps up to
    ``MAX_KEPT`` counterexample serializations per law.  A report is clean iff
    no instance failed.
    """

    suite: str
    seed: int | None = None
    iterations: int | None = None
    checks: Counter = field(default_factory=Counter)
    failed: Counter = field(default_factory=Counter)
    failures: list = field(default_factory=list)

    def check(self, law: str, ok: bool, detail=None) -> bool:
        self.checks[law] += 1
        if not ok:
            self.failed[law] += 1
            if self.failed[law] <= MAX_KEPT:
                self.failures.append((law, detail() if callable(detail) else str(detail)))
        return ok

    def fail(self, law: str, detail) -> None:
        self.check(law, False, detail)

    @property
    def clean(self) -> bool:
        return not self.failed

    def merge(self, other: "Report", prefix: str = "") -> "Report":
        for law, n in other.checks.items():
            self.checks[prefix + law] += n
        for law, n in other.failed.items():
            self.failed[prefix + law] += n
        self.failures.extend((prefix + law, d) for law, d in other.failures)
        return self

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "iterations": self.iterations,
            "checks": dict(sorted(self.checks.items())),
            "failed": dict(sorted(self.failed.items())),
            "failures": [{"law": law, "counterexample": d} for law, d in self.failures],
            "clean": self.clean,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"suite {self.suite}  seed={self.seed}  iterations={self.iterations}"]
        for law in sorted(self.checks):
            n, bad = self.checks[law], self.failed.get(law, 0)
            lines.append(f"  {'FAIL' if bad else 'ok  '}  {law:<44} {n - bad}/{n}")
        for law, d in self.failures:
            lines.append(f"  counterexample [{law}]: {d}")
        lines.append("clean" if self.clean else f"{sum(self.failed.values())} failure(s)")
        return "\n".join(lines)
