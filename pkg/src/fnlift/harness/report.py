"""Suite reports: rows, text/JSON rendering and exit codes."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Any

__all__ = [
    "PASS",
    "FAIL",
    "FAIL_FORMULA",
    "SKIPPED",
    "EXIT_OK",
    "EXIT_FAIL",
    "EXIT_FORMULA",
    "EXIT_USAGE",
    "Row",
    "Report",
    "emit_report",
]

PASS, FAIL, FAIL_FORMULA, SKIPPED = "PASS", "FAIL", "FAIL-FORMULA", "SKIPPED"
EXIT_OK, EXIT_FAIL, EXIT_FORMULA, EXIT_USAGE = 0, 1, 2, 3

CONVENTIONS = {
    "semibasic": (
        "adopted: K is L-semibasic when L o K = 0 and K vanishes whenever an argument is vertical (i_X K = 0); "
        "literal text: 'i_X L = 0', which does not involve K and is not checked"
    ),
    "lie_commutation": "[C, DLX] = D[C, LX] is read with DLX the 1-form Y -> D_Y LX and [C, .] its Lie derivative",
    "cyclic_P": "P(X, F Omega(Y, Z)) is read as the endomorphism W -> P(X, F Omega(Y, Z)) W",
    "integrability": "integrability of the horizontal distribution is certified through Omega = 0",
    "frolicher_nijenhuis": "[K, K] is the Frolicher-Nijenhuis bracket, twice the Nijenhuis torsion of K",
    "covariant_derivative": "(D_W A)(X, ...) = D_W(A(X, ...)) - A(D_W X, ...) - ..., derivative slot first",
}


@dataclass(frozen=True)
class Row:
    suite: str
    statement: str
    anchor: str
    verdict: str
    reason: str | None = None
    witness: dict | None = None
    residual_norm: float | None = None


@dataclass
class Report:
    model: str
    backend: str
    rows: list[Row]
    samples: int | None = None
    seed: int | None = None
    metadata: dict[str, Any] = field(default_factory=lambda: {"conventions": dict(CONVENTIONS)})

    def __post_init__(self):
        self.rows = sorted(self.rows, key=lambda r: (r.suite, r.statement))

    def counts(self) -> dict[str, int]:
        c = Counter(r.verdict for r in self.rows)
        return {v: c.get(v, 0) for v in (PASS, FAIL, FAIL_FORMULA, SKIPPED)}

    def verdicts(self) -> dict[str, str]:
        return {r.statement: r.verdict for r in self.rows}

    def row(self, statement: str) -> Row:
        return next(r for r in self.rows if r.statement == statement)

    @property
    def exit_code(self) -> int:
        c = self.counts()
        if c[FAIL]:
            return EXIT_FAIL
        if c[FAIL_FORMULA]:
            return EXIT_FORMULA
        return EXIT_OK

    def to_dict(self) -> dict[str, Any]:
        return {
            "model": self.model,
            "backend": self.backend,
            "samples": self.samples,
            "seed": self.seed,
            "summary": self.counts(),
            "exit_code": self.exit_code,
            "metadata": self.metadata,
            "rows": [asdict(r) for r in self.rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        head = f"model {self.model}  backend {self.backend}"
        if self.backend == "points":
            head += f"  samples {self.samples}  seed {self.seed}"
        lines = [head]
        width = max((len(r.statement) for r in self.rows), default=0)
        for r in self.rows:
            line = f"{r.verdict:<13} {r.statement:<{width}}  {r.anchor}"
            if r.reason:
                line += f"  [{r.reason}]"
            if r.witness:
                line += f"  witness: {json.dumps(r.witness, sort_keys=True, ensure_ascii=False)}"
            lines.append(line)
        lines.append("summary: " + ", ".join(f"{n} {v}" for v, n in self.counts().items()))
        return "\n".join(lines) + "\n"


def emit_report(report: Report, fmt: str = "text") -> tuple[str, int]:
    """Rendered report and the process exit code."""
    if fmt not in ("text", "json"):
        raise ValueError(f"unknown format {fmt!r}")
    return (report.to_json() if fmt == "json" else report.to_text()), report.exit_code
