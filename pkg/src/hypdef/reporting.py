"""Check reports and their serialization.

Reports are plain records; the emitters guarantee a stable field order and
stable float formatting so identical runs produce identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, List, Sequence


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one named check.

    status is one of pass / fail / diverges, where diverges is reserved for
    checks whose expected outcome is a detected divergence (it counts as a
    pass for exit-code purposes).  The invariant status == pass iff
    max_error <= tolerance is maintained by the from_error constructor.
    """

    check_id: str
    status: str
    max_error: float
    tolerance: float
    samples: int
    seed: int
    details: List[dict] = field(default_factory=list)

    @classmethod
    def from_error(
        cls,
        check_id: str,
        max_error: float,
        tolerance: float,
        samples: int,
        seed: int,
        details: Sequence[dict] = (),
    ) -> "CheckReport":
        status = "pass" if max_error <= tolerance else "fail"
        return cls(
            check_id,
            status,
            float(max_error),
            float(tolerance),
            int(samples),
            int(seed),
            list(details),
        )

    @classmethod
    def divergence(
        cls,
        check_id: str,
        expected: bool,
        samples: int,
        seed: int,
        details: Sequence[dict] = (),
    ) -> "CheckReport":
        """A divergence outcome: expected -> status diverges, else fail."""
        status = "diverges" if expected else "fail"
        return cls(check_id, status, 0.0, 0.0, int(samples), int(seed), list(details))

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def as_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "status": self.status,
            "max_error": self.max_error,
            "tolerance": self.tolerance,
            "samples": self.samples,
            "seed": self.seed,
            "details": self.details,
        }


def report_emit(reports: Iterable[CheckReport], format: str = "json") -> bytes:
    """Serialize reports sorted by check_id; format is 'json' or 'text'."""
    ordered = sorted(reports, key=lambda r: r.check_id)
    if format == "json":
        payload = json.dumps([r.as_dict() for r in ordered], indent=2)
        return (payload + "\n").encode("utf-8")
    if format == "text":
        lines = []
        width = max((len(r.check_id) for r in ordered), default=0)
        for r in ordered:
            lines.append(
                f"{r.status.upper():8s} {r.check_id:<{width}s}  "
                f"max_error={r.max_error:.6e}  tol={r.tolerance:.6e}  "
                f"samples={r.samples}  seed={r.seed}"
            )
        counts = {
            "pass": sum(r.status == "pass" for r in ordered),
            "fail": sum(r.status == "fail" for r in ordered),
            "diverges": sum(r.status == "diverges" for r in ordered),
        }
        summary = (
            f"{len(ordered)} checks: {counts['pass']} pass, "
            f"{counts['fail']} fail, {counts['diverges']} diverges (expected)"
        )
        lines.append(summary)
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError("format must be 'json' or 'text'")


def exit_code(reports: Iterable[CheckReport]) -> int:
    """0 when every report passed (or diverged as expected), else 1."""
    return 0 if all(r.ok for r in reports) else 1
