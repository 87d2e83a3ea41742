"""Machine-checkable verdicts and their JSON form."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

NONEXISTENCE = "nonexistence"
EXISTENCE = "existence_witness"
INCONCLUSIVE = "inconclusive"
VERDICTS = (NONEXISTENCE, EXISTENCE, INCONCLUSIVE)

METHODS = (
    "divisibility",
    "unique_rational_solution_non_integral",
    "exact_cover",
    "pattern_system",
)


@dataclass
class Certificate:
    n: int
    verdict: str
    method: str
    params: dict = field(default_factory=dict)
    evidence: dict = field(default_factory=dict)
    stats: dict = field(default_factory=dict)
    matrix_hash: str | None = None
    solution: list[str] | None = None
    kernel_dim: int | None = None

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "method": self.method,
            "verdict": self.verdict,
            "params": self.params,
            "matrix_hash": self.matrix_hash,
            "solution": self.solution,
            "kernel_dim": self.kernel_dim,
            "evidence": self.evidence,
            "stats": self.stats,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "Certificate":
        return cls(
            n=data["n"],
            verdict=data["verdict"],
            method=data["method"],
            params=data.get("params") or {},
            evidence=data.get("evidence") or {},
            stats=data.get("stats") or {},
            matrix_hash=data.get("matrix_hash"),
            solution=data.get("solution"),
            kernel_dim=data.get("kernel_dim"),
        )

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, **kw)


def fraction_strings(values: Sequence[Fraction]) -> list[str]:
    return [str(Fraction(v)) for v in values]


def matrix_hash(matrix: Sequence[Sequence[Any]], rhs: Sequence[Any] | None = None) -> str:
    """SHA-256 over a canonical text rendering of an exact matrix (and rhs)."""
    h = hashlib.sha256()
    for row in matrix:
        h.update((",".join(str(Fraction(x)) for x in row) + ";").encode())
    if rhs is not None:
        h.update(("|" + ",".join(str(Fraction(x)) for x in rhs)).encode())
    return h.hexdigest()
