"""Deterministic accounting of auxiliary bits and recursion-tree shape.

Only what the algorithm itself keeps is charged: length vectors, the
diffs vectors held by row-0 overrides, oracle nodes built during the
recursion, and a fixed per-frame constant.  The input strings (read-only)
and the final result (write-only) are free.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Optional

__all__ = [
    "SLOT_BITS",
    "WORD_BITS",
    "FRAME_BITS",
    "MeterError",
    "SpaceMeter",
    "TreeStats",
    "MetricsRecord",
    "report",
]

WORD_BITS = 64
#: one stored path length (fixed-width accumulator)
SLOT_BITS = 64
#: per recursion frame: h, m, n, slab bounds, loop index, return linkage
FRAME_BITS = 8 * WORD_BITS


class MeterError(RuntimeError):
    """Accounting went negative or did not balance: an algorithm bug."""


@dataclass
class TreeStats:
    leaf_count: int = 0
    inner_count: int = 0
    max_depth: int = 0
    min_children: Optional[int] = None

    @property
    def node_count(self) -> int:
        return self.leaf_count + self.inner_count

    def record_node(self, depth: int, leaf: bool) -> None:
        if leaf:
            self.leaf_count += 1
        else:
            self.inner_count += 1
        if depth > self.max_depth:
            self.max_depth = depth

    def record_children(self, k: int) -> None:
        if self.min_children is None or k < self.min_children:
            self.min_children = k


@dataclass
class SpaceMeter:
    current_bits: int = 0
    peak_bits: int = 0
    tree: TreeStats = field(default_factory=TreeStats)

    def register_alloc(self, bits: int) -> None:
        if bits < 0:
            raise MeterError(f"negative allocation {bits}")
        self.current_bits += bits
        if self.current_bits > self.peak_bits:
            self.peak_bits = self.current_bits

    def register_free(self, bits: int) -> None:
        if bits < 0 or bits > self.current_bits:
            raise MeterError(f"free of {bits} bits with only {self.current_bits} live")
        self.current_bits -= bits

    def check_balanced(self) -> None:
        if self.current_bits != 0:
            raise MeterError(f"{self.current_bits} bits still live after the run")


@dataclass(frozen=True)
class MetricsRecord:
    algo: str
    m: int
    n: int
    m_hat: int
    B: Optional[int]
    result: int
    peak_aux_bits: int
    leaf_count: int
    inner_count: int
    max_depth: int
    elapsed_ms: float

    #: stable JSON key order
    KEYS = ("algo", "m", "n", "m_hat", "B", "result", "peak_aux_bits",
            "leaf_count", "inner_count", "max_depth", "elapsed_ms")

    def to_dict(self) -> dict:
        d = asdict(self)
        return {k: d[k] for k in self.KEYS}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def report(meter: SpaceMeter, *, algo: str, m: int, n: int, m_hat: int,
           B: Optional[int], result: int, elapsed: float) -> MetricsRecord:
    """Snapshot a finished run.  ``elapsed`` is in seconds."""
    t = meter.tree
    return MetricsRecord(
        algo=algo, m=m, n=n, m_hat=m_hat, B=B, result=int(result),
        peak_aux_bits=meter.peak_bits, leaf_count=t.leaf_count,
        inner_count=t.inner_count, max_depth=t.max_depth,
        elapsed_ms=round(elapsed * 1000.0, 3),
    )
