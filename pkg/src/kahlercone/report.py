"""Machine-readable verification reports.

JSON is the primary output format, versioned via "schemaVersion". In exact
mode every number serializes as a decimal-free rational string ("p/q" or
"p"); exact-mode residuals of passing points are the literal string "0".
Float mode emits plain JSON numbers (shortest round-trip decimals). Reports
contain no wall-clock data unless explicitly requested, so a fixed command
line and seed produce byte-identical output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

from .scalars import format_scalar

SCHEMA_VERSION = 1

__all__ = ["PointResult", "VerificationSummary", "render_json", "render_text"]


@dataclass(frozen=True)
class PointResult:
    y: tuple
    verdict: str
    max_abs_residual: object
    max_rel_residual: Optional[float] = None


@dataclass(frozen=True)
class VerificationSummary:
    form_text: str
    n: int
    mode: str
    convention: str
    seed: Optional[int]
    points: Sequence[PointResult]
    overall: str
    timing_ms: int
    note: Optional[str] = None

    def to_json_dict(self, include_timing: bool = False) -> dict:
        doc = {
            "schemaVersion": SCHEMA_VERSION,
            "form": self.form_text,
            "n": self.n,
            "mode": self.mode,
            "convention": self.convention,
            "seed": self.seed,
            "points": [
                {
                    "y": [format_scalar(v) for v in p.y],
                    "verdict": p.verdict,
                    "maxAbsResidual": format_scalar(p.max_abs_residual),
                    **({"maxRelResidual": p.max_rel_residual}
                       if p.max_rel_residual is not None else {}),
                }
                for p in self.points
            ],
            "overall": self.overall,
        }
        if self.note:
            doc["note"] = self.note
        if include_timing:
            doc["timingMs"] = self.timing_ms
        return doc


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def render_text(summary: VerificationSummary) -> str:
    lines = [
        f"form: {summary.form_text}   (n={summary.n}, mode={summary.mode}, "
        f"convention={summary.convention})",
    ]
    for p in summary.points:
        coords = ", ".join(str(format_scalar(v)) for v in p.y)
        extra = (f"  rel={p.max_rel_residual:.3e}"
                 if p.max_rel_residual is not None else "")
        lines.append(f"  y=({coords}): {p.verdict}  "
                     f"max|residual|={format_scalar(p.max_abs_residual)}{extra}")
    if summary.note:
        lines.append(f"note: {summary.note}")
    lines.append(f"overall: {summary.overall}   [{summary.timing_ms} ms]")
    return "\n".join(lines) + "\n"
