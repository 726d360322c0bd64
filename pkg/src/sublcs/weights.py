"""Weight oracles built from a pair of strings."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .grid import (
    BASE_EDIT_TABLE,
    BASE_EDIT_UNIFORM,
    BASE_LCS,
    ContractViolation,
    EdgeKind,
    Flat,
    GridShape,
    WeightOracle,
)

__all__ = ["to_symbols", "CostTable", "lcs_oracle", "edit_oracle", "UNIT_COSTS"]


def to_symbols(x, unicode: bool = False) -> np.ndarray:
    """Turn a string-like input into a read-only array of integer symbols.

    ``bytes`` are taken byte by byte.  ``str`` is UTF-8 encoded in byte
    mode, or split into code points when ``unicode`` is set.  Any other
    sequence of integers is used as is.
    """
    if isinstance(x, np.ndarray):
        arr = x.astype(np.int64)
    elif isinstance(x, (bytes, bytearray, memoryview)):
        arr = np.frombuffer(bytes(x), dtype=np.uint8).astype(np.int64)
    elif isinstance(x, str):
        if unicode:
            arr = np.frombuffer(x.encode("utf-32-le"), dtype=np.uint32).astype(np.int64)
        else:
            arr = np.frombuffer(x.encode("utf-8"), dtype=np.uint8).astype(np.int64)
    else:
        arr = np.asarray(list(x), dtype=np.int64).reshape(-1)
    arr.setflags(write=False)
    return arr


Cost = Union[int, Callable]


@dataclass(frozen=True)
class CostTable:
    """Edit costs.  ``ins``/``dele`` take one symbol, ``sub`` takes two.

    Each may be a plain nonnegative integer or a callable returning one.
    A match always costs 0, whatever ``sub`` says.
    """

    ins: Cost = 1
    dele: Cost = 1
    sub: Cost = 1

    def __post_init__(self):
        for name in ("ins", "dele", "sub"):
            c = getattr(self, name)
            if not callable(c) and (int(c) != c or c < 0):
                raise ContractViolation(f"{name} cost must be a nonnegative integer, got {c!r}")

    @property
    def uniform(self) -> bool:
        return not any(callable(c) for c in (self.ins, self.dele, self.sub))

    def ins_cost(self, b: int) -> int:
        return _checked(self.ins(b) if callable(self.ins) else self.ins)

    def del_cost(self, a: int) -> int:
        return _checked(self.dele(a) if callable(self.dele) else self.dele)

    def sub_cost(self, a: int, b: int) -> int:
        if a == b:
            return 0
        return _checked(self.sub(a, b) if callable(self.sub) else self.sub)

    def byte_tables(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Tabulate the costs over the 256 byte values."""
        ins = np.array([self.ins_cost(b) for b in range(256)], dtype=np.int64)
        dele = np.array([self.del_cost(a) for a in range(256)], dtype=np.int64)
        sub = np.array([[self.sub_cost(a, b) for b in range(256)] for a in range(256)],
                       dtype=np.int64)
        return ins, dele, sub


def _checked(c) -> int:
    c = int(c)
    if c < 0:
        raise ContractViolation(f"negative edit cost {c}")
    return c


UNIT_COSTS = CostTable()


class _LcsWeights(WeightOracle):
    def __init__(self, s: np.ndarray, t: np.ndarray):
        self.s, self.t = s, t
        self.shape = GridShape(len(s), len(t))

    def weight(self, i, j, kind):
        if kind == EdgeKind.D:
            return 1 if self.s[i] == self.t[j] else 0
        return 0

    def max_abs_weight(self):
        return 1

    def _make_flat(self):
        return Flat(BASE_LCS, s=self.s, t=self.t)


class _EditWeights(WeightOracle):
    def __init__(self, s: np.ndarray, t: np.ndarray, costs: CostTable):
        self.s, self.t, self.costs = s, t, costs
        self.shape = GridShape(len(s), len(t))
        self._tables = None
        in_byte_range = all(len(a) == 0 or (a.min() >= 0 and a.max() < 256) for a in (s, t))
        if not costs.uniform and in_byte_range:
            self._tables = costs.byte_tables()

    def weight(self, i, j, kind):
        if kind == EdgeKind.V:
            return self.costs.del_cost(int(self.s[i]))
        if kind == EdgeKind.H:
            return self.costs.ins_cost(int(self.t[j]))
        return self.costs.sub_cost(int(self.s[i]), int(self.t[j]))

    def max_abs_weight(self):
        c = self.costs
        if c.uniform:
            return max(c.ins, c.dele, c.sub)
        if self._tables is not None:
            return max(int(tab.max()) for tab in self._tables)
        # code-point alphabets with callable costs: scan the symbols present
        best = 0
        for a in self.s:
            best = max(best, c.del_cost(int(a)))
        for b in self.t:
            best = max(best, c.ins_cost(int(b)))
        for a in set(self.s.tolist()):
            for b in set(self.t.tolist()):
                best = max(best, c.sub_cost(a, b))
        return best

    def _make_flat(self):
        c = self.costs
        if c.uniform:
            return Flat(BASE_EDIT_UNIFORM, s=self.s, t=self.t,
                        ins=int(c.ins), dele=int(c.dele), sub=int(c.sub))
        if self._tables is None:
            return None
        ins, dele, sub = self._tables
        return Flat(BASE_EDIT_TABLE, s=self.s, t=self.t,
                    ins_tab=ins, del_tab=dele, sub_tab=sub)


def lcs_oracle(S, T, unicode: bool = False) -> WeightOracle:
    """Diagonal edge into ``(i + 1, j + 1)`` weighs 1 iff ``S[i] == T[j]``."""
    return _LcsWeights(to_symbols(S, unicode), to_symbols(T, unicode))


def edit_oracle(S, T, costs: CostTable = UNIT_COSTS, unicode: bool = False) -> WeightOracle:
    """Edit costs as edge weights, to be minimised.

    Vertical edges delete ``S[i]``, horizontal edges insert ``T[j]`` and
    diagonal edges substitute (free on a match).  The distance is the
    shortest corner path, i.e. minus the longest path of ``negate(...)``.
    """
    return _EditWeights(to_symbols(S, unicode), to_symbols(T, unicode), costs)
