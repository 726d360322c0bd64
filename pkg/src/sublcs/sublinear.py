"""Sublinear-space longest path on the grid, and the LCS / edit distance on top.

The recursion fixes a block size ``B`` once.  A problem on an ``(m, n)``
grid (``m`` a power of two) asks for the path lengths from the origin to
the *terminal slab*, the last ``B``-aligned block of bottom-row columns.
Small problems (``min(m, n) <= 2B``) are swept directly.  Otherwise every
path to the terminal slab crosses the middle row inside some block
``V_h`` of ``B`` columns; for each ``h`` we

1. solve the upper-left part up to the end of ``V_h`` (its terminal slab
   is exactly ``V_h``),
2. solve the lower-right part starting at ``V_h``, with the row-0
   horizontal weights replaced by consecutive differences of the lengths
   found in step 1 so that walking along row 0 "replays" them,
3. fold ``lengths_1[hB] + lengths_2[j - hB]`` into the answer by max.

Only ``O(B)`` values are live per level and the depth is about
``sqrt(log n)``.
"""

from __future__ import annotations

import functools
import math
import time
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from .grid import (
    ContractViolation,
    WeightOracle,
    contamination_threshold,
    negate,
    next_pow2,
    override_row0,
    pad_rows,
    restrict,
    sentinel_for,
    shift,
    transpose,
)
from .meter import FRAME_BITS, SLOT_BITS, WORD_BITS, MetricsRecord, SpaceMeter, report
from .standard import LengthVector, full_table, njit, sweep_lengths
from .weights import UNIT_COSTS, CostTable, edit_oracle, lcs_oracle

__all__ = [
    "ContaminationError",
    "RecursionConfig",
    "choose_block_size",
    "terminal_slab",
    "slab",
    "recursion_bounds",
    "recursion_size",
    "longest_path_lengths",
    "combine",
    "run_longest_path",
    "run_lcs",
    "run_edit_distance",
    "lcs_length",
    "edit_distance",
    "ALGOS",
]

ALGOS = ("sublinear", "standard", "table")
ACC_MIN = np.iinfo(np.int64).min


class ContaminationError(RuntimeError):
    """A result came out of a path that used a padding edge."""


def choose_block_size(n: int) -> int:
    """``ceil((n + 1) / 2 ** sqrt(log2 n))``, taking ``log2 n = 0`` for ``n <= 1``."""
    if n < 0:
        raise ContractViolation("n must be nonnegative")
    lg = math.log2(n) if n > 1 else 0.0
    return max(1, math.ceil((n + 1) / 2.0 ** math.sqrt(lg)))


def slab_count(n: int, B: int) -> int:
    return -(-(n + 1) // B)


def slab(h: int, n: int, B: int) -> range:
    """Columns of block ``h``: ``hB .. min((h + 1)B - 1, n)``."""
    if not 0 <= h < slab_count(n, B):
        raise ContractViolation(f"slab {h} out of range for n={n}, B={B}")
    return range(h * B, min((h + 1) * B - 1, n) + 1)


def terminal_slab(n: int, B: int) -> range:
    return range((slab_count(n, B) - 1) * B, n + 1)


def recursion_bounds(n: int, B: int, m_hat: int) -> tuple[int, int]:
    """(leaf bound, depth bound) for a run on ``m_hat`` rows and ``n`` columns."""
    depth = 0
    while m_hat > 2 * B << depth:
        depth += 1
    return (2 * slab_count(n, B)) ** depth, depth


@functools.lru_cache(maxsize=None)
def recursion_size(m: int, n: int, B: int) -> int:
    """Exact number of recursion nodes for an ``(m, n)`` grid, ``m`` a power of two.

    The tree shape depends only on the grid shape and ``B``, so this is
    cheap to evaluate without running anything.
    """
    if min(m, n) <= 2 * B:
        return 1
    half = m // 2
    total = 1
    for h in range(slab_count(n, B)):
        block = slab(h, n, B)
        total += recursion_size(half, block[-1], B) + recursion_size(half, n - block.start, B)
    return total


@dataclass(frozen=True)
class RecursionConfig:
    B: int
    sentinel: int = 0
    m_hat: int = 0
    b_override: Optional[int] = None

    def __post_init__(self):
        if self.B < 1:
            raise ContractViolation("block size must be >= 1")

    @property
    def base_threshold(self) -> int:
        return 2 * self.B


@njit(cache=True)
def _fold_max(acc, tail, base):
    for k in range(acc.shape[0]):
        v = base + tail[k]
        if v > acc[k]:
            acc[k] = v


def combine(acc: LengthVector, head: LengthVector, tail: LengthVector,
            h: int, B: int) -> LengthVector:
    """``acc[j] = max(acc[j], head[hB] + tail[j - hB])`` over the terminal slab.

    ``head`` covers block ``h`` of the middle row, ``tail`` is indexed in
    the frame shifted by ``hB`` columns.
    """
    hb = h * B
    if tail.offset != acc.offset - hb or len(tail) != len(acc):
        raise ContractViolation(
            f"tail slab [{tail.offset}, {tail.last}] does not line up with "
            f"[{acc.offset}, {acc.last}] shifted by {hb}")
    _fold_max(acc.values, tail.values, head[hb])
    return acc


def _oracle_bits(w: WeightOracle) -> int:
    return (w.own_words + w.payload_words()) * WORD_BITS


def longest_path_lengths(w: WeightOracle, config: RecursionConfig,
                         meter: Optional[SpaceMeter] = None,
                         _depth: int = 0) -> LengthVector:
    """Path lengths from the origin to the terminal slab of ``w``'s bottom row."""
    if meter is None:
        meter = SpaceMeter()
    m, n = w.m, w.n
    if m < 1 or m & (m - 1):
        raise ContractViolation(f"row count {m} is not a power of two")
    B = config.B
    target = terminal_slab(n, B)
    meter.register_alloc(FRAME_BITS)

    if min(m, n) <= config.base_threshold:
        meter.tree.record_node(_depth, leaf=True)
        out = sweep_lengths(w, target, meter)
        meter.register_free(FRAME_BITS)
        return out

    meter.tree.record_node(_depth, leaf=False)
    k = slab_count(n, B)
    meter.tree.record_children(2 * k)
    half = m // 2
    acc = LengthVector.allocate(target.start, len(target), meter)
    acc.values.fill(ACC_MIN)

    for h in range(k):
        block = slab(h, n, B)
        hb = block.start

        upper = restrict(w, half, block[-1])
        meter.register_alloc(_oracle_bits(upper))
        head = longest_path_lengths(upper, config, meter, _depth + 1)
        meter.register_free(_oracle_bits(upper))
        if head.offset != hb or len(head) != len(block):
            raise ContractViolation("upper sub-problem did not return the middle-row block")

        moved = shift(w, half, hb, half, n - hb)
        lower = override_row0(moved, head.values[1:] - head.values[:-1])
        lower_bits = _oracle_bits(moved) + _oracle_bits(lower)
        meter.register_alloc(lower_bits)
        # (ceil((n - hB + 1) / B) - 1) B == (ceil((n + 1) / B) - 1) B - hB
        if terminal_slab(n - hb, B).start != target.start - hb:
            raise ContractViolation("terminal slab of the lower part is misaligned")
        tail = longest_path_lengths(lower, config, meter, _depth + 1)
        meter.register_free(lower_bits)

        combine(acc, head, tail, h, B)
        tail.release(meter)
        head.release(meter)

    meter.register_free(FRAME_BITS)
    return acc


def run_longest_path(w: WeightOracle, *, algo: str = "sublinear",
                     block_size: Optional[int] = None,
                     meter: Optional[SpaceMeter] = None) -> MetricsRecord:
    """Longest origin-to-corner path of ``w`` plus run metrics.

    The grid is transposed first when it is taller than wide, so the
    record's ``m`` and ``n`` satisfy ``m <= n``.
    """
    if algo not in ALGOS:
        raise ContractViolation(f"unknown algorithm {algo!r}")
    if meter is None:
        meter = SpaceMeter()
    if w.m > w.n:
        w = transpose(w)
    m, n = w.m, w.n
    B = None
    m_hat = m
    start = time.perf_counter()

    if algo == "table":
        value = full_table(w)[m][n]
        meter.tree.record_node(0, leaf=True)
    elif algo == "standard":
        meter.register_alloc(FRAME_BITS)
        meter.tree.record_node(0, leaf=True)
        out = sweep_lengths(w, range(n, n + 1), meter)
        value = out[n]
        out.release(meter)
        meter.register_free(FRAME_BITS)
    else:
        B = block_size if block_size is not None else choose_block_size(n)
        if B < 1:
            raise ContractViolation("block size must be >= 1")
        if m == 0:
            # a single row is already a base case
            meter.register_alloc(FRAME_BITS)
            meter.tree.record_node(0, leaf=True)
            out = sweep_lengths(w, range(n, n + 1), meter)
            value = out[n]
            out.release(meter)
            meter.register_free(FRAME_BITS)
        else:
            w_max = w.max_abs_weight()
            m_hat = next_pow2(m)
            sentinel = sentinel_for(m_hat, n, w_max)
            _check_headroom(m_hat, n, w_max, sentinel)
            padded, _ = pad_rows(w, sentinel)
            config = RecursionConfig(B=B, sentinel=sentinel, m_hat=m_hat,
                                     b_override=block_size)
            meter.register_alloc(_oracle_bits(padded))
            out = longest_path_lengths(padded, config, meter)
            value = out[n]
            out.release(meter)
            meter.register_free(_oracle_bits(padded))
            if value < contamination_threshold(m_hat, n, w_max):
                raise ContaminationError(f"corner value {value} crossed a padding edge")

    elapsed = time.perf_counter() - start
    meter.check_balanced()
    return report(meter, algo=algo, m=m, n=n, m_hat=m_hat, B=B, result=value,
                  elapsed=elapsed)


def _check_headroom(m_hat: int, n: int, w_max: int, sentinel: int) -> None:
    # every intermediate value is a (difference of) padded path sums
    worst = (m_hat + 1) * -sentinel + (m_hat + n + 1) * w_max
    if 4 * worst >= 1 << 63:
        raise ContractViolation(
            f"weights up to {w_max} on a {m_hat}x{n} grid overflow 64-bit path sums")


def run_lcs(S, T, *, algo: str = "sublinear", block_size: Optional[int] = None,
            unicode: bool = False, meter: Optional[SpaceMeter] = None) -> MetricsRecord:
    w = lcs_oracle(S, T, unicode=unicode)
    if algo == "sublinear" and min(w.m, w.n) == 0:
        if meter is None:
            meter = SpaceMeter()
        m, n = sorted((w.m, w.n))
        B = block_size if block_size is not None else choose_block_size(n)
        return report(meter, algo=algo, m=m, n=n, m_hat=m, B=B, result=0, elapsed=0.0)
    rec = run_longest_path(w, algo=algo, block_size=block_size, meter=meter)
    if rec.result < 0:
        raise ContaminationError(f"negative LCS length {rec.result}")
    return rec


def run_edit_distance(S, T, costs: CostTable = UNIT_COSTS, *, algo: str = "sublinear",
                      block_size: Optional[int] = None, unicode: bool = False,
                      meter: Optional[SpaceMeter] = None) -> MetricsRecord:
    w = negate(edit_oracle(S, T, costs, unicode=unicode))
    rec = run_longest_path(w, algo=algo, block_size=block_size, meter=meter)
    return replace(rec, result=-rec.result)


def lcs_length(S, T, *, block_size: Optional[int] = None, unicode: bool = False) -> int:
    """Length of a longest common subsequence of ``S`` and ``T``."""
    return run_lcs(S, T, block_size=block_size, unicode=unicode).result


def edit_distance(S, T, costs: CostTable = UNIT_COSTS, *,
                  block_size: Optional[int] = None, unicode: bool = False) -> int:
    """Minimum total cost of insertions, deletions and substitutions."""
    return run_edit_distance(S, T, costs, block_size=block_size, unicode=unicode).result
