"""Structured results for the command line.

Every subcommand produces a Report: named checks with measured values
and tolerances, plus an optional data payload.  JSON output is
deterministic (sorted keys, fixed shapes) so runs diff cleanly.
Exit status: 0 when every check passed, 1 when any failed; usage and
input errors exit 2 before a report exists.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    tol: float | None = None
    passed: bool | None = None
    detail: str = ""

    def resolved(self) -> bool:
        """Pass/fail with the tolerance rule applied when not set explicitly."""
        if self.passed is not None:
            return self.passed
        if self.tol is None:
            return True
        return self.value <= self.tol


@dataclass
class Report:
    tool: str
    inputs: dict = field(default_factory=dict)
    checks: list[CheckResult] = field(default_factory=list)
    data: dict = field(default_factory=dict)
    wall_time_s: float | None = None
    version: str = ""

    def add(self, name: str, value: float, tol: float | None = None,
            passed: bool | None = None, detail: str = "") -> CheckResult:
        r = CheckResult(name, float(value), tol, passed, detail)
        self.checks.append(r)
        return r

    @property
    def ok(self) -> bool:
        return all(c.resolved() for c in self.checks)

    def exit_code(self) -> int:
        return 0 if self.ok else 1


def _plain(x):
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if hasattr(x, "item"):
        return _plain(x.item())
    return x


def report_to_json(rep: Report) -> str:
    """Deterministic apart from the wall-time field."""
    doc = {
        "tool": rep.tool,
        "inputs": _plain(rep.inputs),
        "ok": rep.ok,
        "checks": [
            {
                "name": c.name,
                "value": c.value,
                "tol": c.tol,
                "passed": c.resolved(),
                "detail": c.detail,
            }
            for c in rep.checks
        ],
        "data": _plain(rep.data),
        "wall_time_s": rep.wall_time_s,
        "version": rep.version,
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def report_to_text(rep: Report) -> str:
    lines = [f"# {rep.tool}"]
    for k in sorted(rep.inputs):
        lines.append(f"  {k} = {rep.inputs[k]}")
    for c in rep.checks:
        mark = "PASS" if c.resolved() else "FAIL"
        tol = f" (tol {c.tol:g})" if c.tol is not None else ""
        extra = f"  {c.detail}" if c.detail else ""
        lines.append(f"{mark} {c.name}: {c.value:.6g}{tol}{extra}")
    if not rep.checks:
        lines.append("(no checks; informational run)")
    return "\n".join(lines) + "\n"
