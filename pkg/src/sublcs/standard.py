"""The longest-path recurrence on the grid: linear-space sweep and oracles.

``sweep_lengths`` is the classic two-front dynamic program and serves as
the base case of the recursive algorithm.  ``full_table`` and
``enumerate_paths_value`` are slow, independent references for tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .grid import (
    BASE_DENSE,
    BASE_EDIT_TABLE,
    BASE_EDIT_UNIFORM,
    BASE_LCS,
    ContractViolation,
    EdgeKind,
    Flat,
    WeightOracle,
)
from .meter import SLOT_BITS, SpaceMeter

try:
    from numba import njit
except ImportError:  # pragma: no cover
    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f

__all__ = [
    "LengthVector",
    "sweep_lengths",
    "full_table",
    "enumerate_paths_value",
    "FULL_TABLE_LIMIT",
    "ENUMERATION_LIMIT",
]

FULL_TABLE_LIMIT = 1 << 22
ENUMERATION_LIMIT = 6


@dataclass
class LengthVector:
    """Path lengths to bottom-row columns ``offset .. offset + len - 1``."""

    offset: int
    values: np.ndarray

    @classmethod
    def allocate(cls, offset: int, width: int, meter: Optional[SpaceMeter]):
        if meter is not None:
            meter.register_alloc(width * SLOT_BITS)
        return cls(offset, np.empty(width, dtype=np.int64))

    def release(self, meter: Optional[SpaceMeter]) -> None:
        if meter is not None:
            meter.register_free(len(self.values) * SLOT_BITS)

    @property
    def last(self) -> int:
        return self.offset + len(self.values) - 1

    def __len__(self):
        return len(self.values)

    def __getitem__(self, j: int) -> int:
        k = j - self.offset
        if not 0 <= k < len(self.values):
            raise ContractViolation(f"column {j} outside [{self.offset}, {self.last}]")
        return int(self.values[k])

    def tolist(self) -> list[int]:
        return [int(v) for v in self.values]


# --------------------------------------------------------------------------
# compiled sweep over flattened oracles


@njit(cache=True)
def _sweep_flat(m, n, first, last, cur, nxt, out,
                P, s, t, H, V, D, ins_tab, del_tab, sub_tab, ov):
    # P layout follows grid._PARAM_NAMES.  The evaluator is a closure so that
    # it is inlined; passing the arrays to a separate jitted function costs
    # refcount traffic on every edge.
    base, sign, transposed, pad_m, pad_n, sentinel = P[0], P[1], P[2], P[3], P[4], P[5]
    r0, c0, ov_len, ins, dele, sub = P[6], P[7], P[8], P[9], P[10], P[11]

    def w(kind, i, j):
        if kind == 0 and i == 0 and j < ov_len:
            return ov[j]
        I = i + r0
        J = j + c0
        if pad_m >= 0:
            if kind == 0:
                if I > pad_m:
                    return sentinel
            elif I >= pad_m:
                if kind == 1 and J == pad_n:
                    return 0
                return sentinel
        if transposed != 0:
            I, J = J, I
            if kind == 0:
                kind = 1
            elif kind == 1:
                kind = 0
        if base == 1:
            v = 1 if kind == 2 and s[I] == t[J] else 0
        elif base == 2:
            if kind == 1:
                v = dele
            elif kind == 0:
                v = ins
            elif s[I] == t[J]:
                v = 0
            else:
                v = sub
        elif base == 3:
            if kind == 1:
                v = del_tab[s[I]]
            elif kind == 0:
                v = ins_tab[t[J]]
            elif s[I] == t[J]:
                v = 0
            else:
                v = sub_tab[s[I], t[J]]
        else:
            if kind == 0:
                v = H[I, J]
            elif kind == 1:
                v = V[I, J]
            else:
                v = D[I, J]
        return sign * v

    if m <= n:
        # fronts are columns 0..m
        cur[0] = 0
        for i in range(1, m + 1):
            cur[i] = cur[i - 1] + w(1, i - 1, 0)
        if first == 0:
            out[0] = cur[m]
        for j in range(1, last + 1):
            nxt[0] = cur[0] + w(0, 0, j - 1)
            for i in range(1, m + 1):
                a = cur[i] + w(0, i, j - 1)
                b = nxt[i - 1] + w(1, i - 1, j)
                c = cur[i - 1] + w(2, i - 1, j - 1)
                if b > a:
                    a = b
                if c > a:
                    a = c
                nxt[i] = a
            if j >= first:
                out[j - first] = nxt[m]
            cur, nxt = nxt, cur
    else:
        # fronts are rows; columns past ``last`` never matter
        cur[0] = 0
        for j in range(1, last + 1):
            cur[j] = cur[j - 1] + w(0, 0, j - 1)
        for i in range(1, m + 1):
            nxt[0] = cur[0] + w(1, i - 1, 0)
            for j in range(1, last + 1):
                a = cur[j] + w(1, i - 1, j)
                b = nxt[j - 1] + w(0, i, j - 1)
                c = cur[j - 1] + w(2, i - 1, j - 1)
                if b > a:
                    a = b
                if c > a:
                    a = c
                nxt[j] = a
            cur, nxt = nxt, cur
        for k in range(last - first + 1):
            out[k] = cur[first + k]


def _sweep_python(w: WeightOracle, m, n, first, last, cur, nxt, out):
    """Same sweep as the compiled kernel, through the scalar oracle API."""
    wt = w.weight
    H, V, D = EdgeKind.H, EdgeKind.V, EdgeKind.D
    if m <= n:
        cur[0] = 0
        for i in range(1, m + 1):
            cur[i] = cur[i - 1] + wt(i - 1, 0, V)
        if first == 0:
            out[0] = cur[m]
        for j in range(1, last + 1):
            nxt[0] = cur[0] + wt(0, j - 1, H)
            for i in range(1, m + 1):
                nxt[i] = max(cur[i] + wt(i, j - 1, H),
                             nxt[i - 1] + wt(i - 1, j, V),
                             cur[i - 1] + wt(i - 1, j - 1, D))
            if j >= first:
                out[j - first] = nxt[m]
            cur, nxt = nxt, cur
    else:
        cur[0] = 0
        for j in range(1, last + 1):
            cur[j] = cur[j - 1] + wt(0, j - 1, H)
        for i in range(1, m + 1):
            nxt[0] = cur[0] + wt(i - 1, 0, V)
            for j in range(1, last + 1):
                nxt[j] = max(cur[j] + wt(i - 1, j, V),
                             nxt[j - 1] + wt(i, j - 1, H),
                             cur[j - 1] + wt(i - 1, j - 1, D))
            cur, nxt = nxt, cur
        out[:] = cur[first:last + 1]


def _run_flat(f: Flat, m, n, first, last, cur, nxt, out):
    _sweep_flat(m, n, first, last, cur, nxt, out,
                np.array(f.P, dtype=np.int64), *f.arrays, f.ov)


def sweep_lengths(w: WeightOracle, targets: range,
                  meter: Optional[SpaceMeter] = None) -> LengthVector:
    """Longest-path lengths from the origin to bottom-row columns ``targets``.

    Working storage is two fronts of ``min(m, n) + 1`` values: the sweep
    runs column by column when ``m <= n`` and row by row otherwise.
    """
    m, n = w.m, w.n
    if len(targets) == 0 or targets.step != 1:
        raise ContractViolation("targets must be a non-empty contiguous column range")
    first, last = targets.start, targets.stop - 1
    if first < 0 or last > n:
        raise ContractViolation(f"targets {first}..{last} outside 0..{n}")

    front = min(m, n) + 1
    if meter is not None:
        meter.register_alloc(2 * front * SLOT_BITS)
    out = LengthVector.allocate(first, last - first + 1, meter)
    f = w.flat()
    if f is not None:
        cur = np.empty(front, dtype=np.int64)
        nxt = np.empty(front, dtype=np.int64)
        _run_flat(f, m, n, first, last, cur, nxt, out.values)
    else:
        cur, nxt = [0] * front, [0] * front
        vals = [0] * len(out)
        _sweep_python(w, m, n, first, last, cur, nxt, vals)
        out.values[:] = vals
    if meter is not None:
        meter.register_free(2 * front * SLOT_BITS)
    return out


def full_table(w: WeightOracle, limit: int = FULL_TABLE_LIMIT) -> list[list[int]]:
    """Every ``λ(origin, (i, j))`` by the plain recurrence (test oracle)."""
    m, n = w.m, w.n
    if (m + 1) * (n + 1) > limit:
        raise ContractViolation(
            f"full table of {(m + 1) * (n + 1)} cells exceeds the limit of {limit}")
    wt = w.weight
    H, V, D = EdgeKind.H, EdgeKind.V, EdgeKind.D
    L = [[0] * (n + 1) for _ in range(m + 1)]
    for j in range(1, n + 1):
        L[0][j] = L[0][j - 1] + wt(0, j - 1, H)
    for i in range(1, m + 1):
        L[i][0] = L[i - 1][0] + wt(i - 1, 0, V)
        for j in range(1, n + 1):
            L[i][j] = max(L[i - 1][j] + wt(i - 1, j, V),
                          L[i][j - 1] + wt(i, j - 1, H),
                          L[i - 1][j - 1] + wt(i - 1, j - 1, D))
    return L


def enumerate_paths_value(w: WeightOracle, start=(0, 0), end=None,
                          through=None) -> int:
    """Best weight over all monotone paths, by exhaustive enumeration.

    ``through`` optionally restricts to paths visiting at least one vertex
    of the given set.  Returns ``None`` when no path qualifies.
    """
    m, n = w.m, w.n
    if m > ENUMERATION_LIMIT or n > ENUMERATION_LIMIT:
        raise ContractViolation(f"enumeration refused for grid {w.shape}")
    if end is None:
        end = (m, n)
    through = set(through) if through is not None else None
    best = None
    H, V, D = EdgeKind.H, EdgeKind.V, EdgeKind.D

    def walk(i, j, acc, hit):
        nonlocal best
        hit = hit or (through is not None and (i, j) in through)
        if (i, j) == end:
            if (through is None or hit) and (best is None or acc > best):
                best = acc
            return
        if j < end[1]:
            walk(i, j + 1, acc + w.weight(i, j, H), hit)
        if i < end[0]:
            walk(i + 1, j, acc + w.weight(i, j, V), hit)
        if i < end[0] and j < end[1]:
            walk(i + 1, j + 1, acc + w.weight(i, j, D), hit)

    walk(start[0], start[1], 0, False)
    return best
