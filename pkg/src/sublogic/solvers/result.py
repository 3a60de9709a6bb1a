"""Common result type for every decision procedure."""
from __future__ import annotations

from dataclasses import dataclass, field

SAT, UNSAT, UNKNOWN = "SAT", "UNSAT", "UNKNOWN"


@dataclass
class SolveResult:
    status: str
    method: str
    model: object = None          # Interpretation, when SAT and requested
    witness: object = None        # derivation, cycle or path explaining UNSAT
    stats: dict = field(default_factory=dict)

    @property
    def sat(self):
        return self.status == SAT

    def __str__(self):
        return self.status
