"""Check reports: JSON and aligned-text rendering, exit codes."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .representation import CheckReport

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3


def _clean(x):
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    if isinstance(x, dict):
        return {k: _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, complex):
        return [_clean(x.real), _clean(x.imag)]
    return x


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.6g}"
    if isinstance(x, list) and len(x) == 2 and all(isinstance(v, float) for v in x):
        return f"{x[0]:.12g}{x[1]:+.12g}i"
    if isinstance(x, dict):
        return ", ".join(f"{k}={_fmt(v)}" for k, v in x.items())
    return str(x)


@dataclass
class Report:
    command: str
    checks: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    def add(self, check: CheckReport) -> CheckReport:
        self.checks.append(check)
        return check

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.passed else EXIT_FAIL

    def to_json(self) -> str:
        doc = {
            "command": self.command,
            "passed": self.passed,
            "info": _clean(self.info),
            "checks": [_clean(c.as_dict()) for c in self.checks],
        }
        return json.dumps(doc, indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"{k}: {_fmt(_clean(v))}" for k, v in self.info.items()]
        if self.checks:
            width = max(len(c.name) for c in self.checks)
            for c in self.checks:
                status = "PASS" if c.passed else "FAIL"
                lines.append(f"{c.name:<{width}}  {status}  tol={c.tolerance:<8.3g}  {_fmt(_clean(c.values))}")
        return "\n".join(lines)
