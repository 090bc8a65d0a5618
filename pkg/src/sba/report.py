"""Check records and report rendering (text and JSON lines)."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, List, Optional

from .graded import format_coeff

PASS, FAIL, INCONCLUSIVE, SKIPPED = "pass", "fail", "inconclusive", "skipped"
VERDICTS = (PASS, FAIL, INCONCLUSIVE, SKIPPED)


def _plain(x: Any) -> Any:
    """Make values JSON friendly: scalars to strings, tuples to lists."""
    if isinstance(x, (str, int, bool)) or x is None:
        return x
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return format_coeff(x)


@dataclass
class CheckResult:
    name: str
    anchor: str
    verdict: str
    counterexample: Optional[Any] = None
    detail: str = ""
    samples: Optional[int] = None

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"bad verdict {self.verdict!r}")

    @property
    def ok(self) -> bool:
        return self.verdict == PASS

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        d = {"check": self.name, "anchor": self.anchor, "verdict": self.verdict}
        if self.counterexample is not None:
            d["counterexample"] = _plain(self.counterexample)
        if self.detail:
            d["detail"] = self.detail
        if self.samples is not None:
            d["samples"] = self.samples
        return d

    def line(self) -> str:
        s = f"[{self.verdict.upper():4}] {self.name}"
        if self.samples is not None:
            s += f" (samples={self.samples})"
        if self.counterexample is not None:
            s += f" counterexample={_plain(self.counterexample)}"
        if self.detail:
            s += f" -- {self.detail}"
        return s


def passed(name: str, anchor: str, detail: str = "", samples: int | None = None) -> CheckResult:
    return CheckResult(name, anchor, PASS, detail=detail, samples=samples)


def failed(name: str, anchor: str, counterexample, detail: str = "",
           samples: int | None = None) -> CheckResult:
    return CheckResult(name, anchor, FAIL, counterexample=counterexample,
                       detail=detail, samples=samples)


@dataclass
class Report:
    command: str
    seed: Optional[int] = None
    checks: List[CheckResult] = field(default_factory=list)
    output: List[str] = field(default_factory=list)

    def add(self, *results: CheckResult) -> None:
        self.checks.extend(results)

    def say(self, text: str) -> None:
        self.output.append(text)

    @property
    def exit_code(self) -> int:
        return 1 if any(c.verdict == FAIL for c in self.checks) else 0

    def render_text(self) -> str:
        head = f"$ {self.command}"
        if self.seed is not None:
            head += f"  (seed={self.seed})"
        lines = [head] + self.output + [c.line() for c in self.checks]
        if self.checks:
            n_pass = sum(c.verdict == PASS for c in self.checks)
            lines.append(f"{n_pass}/{len(self.checks)} checks passed")
        return "\n".join(lines)

    def render_json(self) -> str:
        rows = [{"command": self.command, "seed": self.seed}]
        rows += [{"output": o} for o in self.output]
        rows += [c.to_dict() for c in self.checks]
        rows.append({"exit": self.exit_code})
        return "\n".join(json.dumps(r, sort_keys=True) for r in rows)
