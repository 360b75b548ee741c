from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any

CONDITIONS = (
    "semihereditary",
    "wdim_le1",
    "arithmetical",
    "fqp",
    "gaussian",
    "pruefer",
    "total_quotients",
    "chained",
)
METHODS = ("oracle", "theorem", "finite-trivial")


@dataclass
class ConditionVerdict:
    condition: str
    holds: bool
    method: str = "oracle"
    witness: dict[str, Any] | None = None
    elapsed: float = 0.0
    notes: dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self, ring: str, size: int, timings: bool = False) -> dict[str, Any]:
        return {
            "ring": ring,
            "size": size,
            "condition": self.condition,
            "holds": self.holds,
            "method": self.method,
            "witness": self.witness,
            "elapsed_ms": round(self.elapsed * 1000, 3) if timings else None,
        }


@contextmanager
def timed(holder: dict):
    t0 = time.perf_counter()
    try:
        yield
    finally:
        holder["elapsed"] = time.perf_counter() - t0
