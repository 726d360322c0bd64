"""Grid DAG with diagonal edges and composable edge-weight oracles.

The grid ``(m, n)`` has vertices ``(i, j)`` with ``0 <= i <= m`` and
``0 <= j <= n``.  Every vertex has up to three outgoing edges: horizontal
``(i, j) -> (i, j + 1)``, vertical ``(i, j) -> (i + 1, j)`` and diagonal
``(i, j) -> (i + 1, j + 1)``.  An edge is identified by its tail and kind.

Weights are never stored per edge.  A :class:`WeightOracle` computes the
weight of any edge on demand, and the combinators in this module
(:func:`restrict`, :func:`shift`, :func:`override_row0`, :func:`negate`,
:func:`pad_rows`, :func:`transpose`) wrap a parent oracle with O(1) extra
indices (plus the diffs vector for :func:`override_row0`).

Besides the scalar :meth:`WeightOracle.weight`, oracles built from the
stock bases and combinators also expose a *flat* description
(:class:`Flat`) that the compiled sweep in :mod:`sublcs.standard`
evaluates inline.  Oracles that cannot be flattened (e.g. arbitrary
Python callables) fall back to the scalar path.
"""

from __future__ import annotations

import enum
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

__all__ = [
    "ContractViolation",
    "EdgeKind",
    "Edge",
    "GridShape",
    "WeightOracle",
    "ArrayWeights",
    "FunctionWeights",
    "restrict",
    "shift",
    "override_row0",
    "negate",
    "pad_rows",
    "transpose",
    "next_pow2",
    "sentinel_for",
    "contamination_threshold",
    "ORACLE_NODE_WORDS",
]

# Words of index state a combinator node keeps beyond its parent pointer
# and payload (shape, offsets, flags).
ORACLE_NODE_WORDS = 4


class ContractViolation(ValueError):
    """A caller broke an operation's precondition."""


class EdgeKind(enum.IntEnum):
    H = 0  # (i, j) -> (i, j + 1)
    V = 1  # (i, j) -> (i + 1, j)
    D = 2  # (i, j) -> (i + 1, j + 1)

    @property
    def swapped(self) -> "EdgeKind":
        if self is EdgeKind.H:
            return EdgeKind.V
        if self is EdgeKind.V:
            return EdgeKind.H
        return self


class Edge(NamedTuple):
    i: int
    j: int
    kind: EdgeKind

    @property
    def head(self) -> tuple[int, int]:
        if self.kind == EdgeKind.H:
            return (self.i, self.j + 1)
        if self.kind == EdgeKind.V:
            return (self.i + 1, self.j)
        return (self.i + 1, self.j + 1)


class GridShape(NamedTuple):
    m: int
    n: int

    @classmethod
    def checked(cls, m: int, n: int) -> "GridShape":
        if m < 0 or n < 0:
            raise ContractViolation(f"negative grid shape {(m, n)}")
        return cls(m, n)

    @property
    def vertex_count(self) -> int:
        return (self.m + 1) * (self.n + 1)

    @property
    def edge_count(self) -> int:
        m, n = self.m, self.n
        return m * (n + 1) + (m + 1) * n + m * n

    def contains(self, i: int, j: int, kind: EdgeKind) -> bool:
        if i < 0 or j < 0 or i > self.m or j > self.n:
            return False
        if kind == EdgeKind.H:
            return j <= self.n - 1
        if kind == EdgeKind.V:
            return i <= self.m - 1
        return i <= self.m - 1 and j <= self.n - 1

    def edges(self):
        """Yield every edge of the grid (row-major, tail order)."""
        for i in range(self.m + 1):
            for j in range(self.n + 1):
                for kind in EdgeKind:
                    if self.contains(i, j, kind):
                        yield Edge(i, j, kind)


def next_pow2(m: int) -> int:
    """Smallest power of two that is >= ``m`` (``m >= 1``)."""
    if m < 1:
        raise ContractViolation("next_pow2 needs m >= 1")
    return 1 << (m - 1).bit_length()


def sentinel_for(m_hat: int, n_hat: int, w_max: int) -> int:
    """Finite stand-in for minus infinity on padding edges.

    Any path that uses one sentinel edge is strictly lighter than every
    path made only of genuine edges.
    """
    return -(2 * (m_hat + n_hat + 2) * w_max + 1)


def contamination_threshold(m_hat: int, n_hat: int, w_max: int) -> int:
    """Path values strictly below this have crossed a sentinel edge."""
    return -(m_hat + n_hat + 2) * w_max


# --------------------------------------------------------------------------
# flat description consumed by the compiled sweep

BASE_LCS = 1
BASE_EDIT_UNIFORM = 2
BASE_EDIT_TABLE = 3
BASE_DENSE = 4

_EMPTY1 = np.zeros(1, dtype=np.int64)
_EMPTY2 = np.zeros((1, 1), dtype=np.int64)
_UNSET = object()


_PARAM_NAMES = ("base", "sign", "transposed", "pad_m", "pad_n", "sentinel",
                "r0", "c0", "ov_len", "ins", "dele", "sub")
_PARAM_INDEX = {name: k for k, name in enumerate(_PARAM_NAMES)}
_ARRAY_NAMES = ("s", "t", "H", "V", "D", "ins_tab", "del_tab", "sub_tab")
_R0, _C0, _OV_LEN = _PARAM_INDEX["r0"], _PARAM_INDEX["c0"], _PARAM_INDEX["ov_len"]


class Flat:
    """Normal form ``override ∘ offset ∘ pad ∘ (sign · transpose?(base))``.

    Scalars live in the list ``P`` (layout ``_PARAM_NAMES``); the compiled
    sweep reads it as an int64 vector.  ``pad_m`` is -1 without padding; ``ov``
    holds the ``ov_len`` row-0 horizontal overrides of the current frame.
    """

    __slots__ = ("P", "arrays", "ov")

    def __init__(self, base: int, **kwargs):
        self.P = [0] * len(_PARAM_NAMES)
        self.P[_PARAM_INDEX["base"]] = base
        self.P[_PARAM_INDEX["sign"]] = 1
        self.P[_PARAM_INDEX["pad_m"]] = -1
        arrays = []
        for name in _ARRAY_NAMES:
            default = _EMPTY2 if name in ("H", "V", "D", "sub_tab") else _EMPTY1
            arrays.append(kwargs.pop(name, default))
        self.arrays = tuple(arrays)
        self.ov = _EMPTY1
        for name, value in kwargs.items():
            self.P[_PARAM_INDEX[name]] = int(value)

    def derive(self, ov: Optional[np.ndarray] = None, **changes) -> "Flat":
        f = object.__new__(Flat)
        f.P = list(self.P)
        f.arrays = self.arrays
        f.ov = self.ov if ov is None else ov
        for name, value in changes.items():
            f.P[_PARAM_INDEX[name]] = int(value)
        return f

    def __getattr__(self, name):
        k = _PARAM_INDEX.get(name)
        if k is None:
            raise AttributeError(name)
        return self.P[k]

    @property
    def pristine(self) -> bool:
        return self.pad_m < 0 and self.ov_len == 0


# --------------------------------------------------------------------------
# oracles


class WeightOracle:
    """Pure map from edges of ``shape`` to integer weights."""

    shape: GridShape
    #: words of state owned by this node, excluding its parent and payload
    own_words: int = ORACLE_NODE_WORDS

    def weight(self, i: int, j: int, kind: EdgeKind) -> int:
        raise NotImplementedError

    def __call__(self, edge: Edge) -> int:
        i, j, kind = edge
        if not self.shape.contains(i, j, kind):
            raise ContractViolation(f"edge {edge} not in grid {self.shape}")
        return self.weight(i, j, EdgeKind(kind))

    def max_abs_weight(self) -> int:
        """Upper bound on ``|w(e)|`` over genuine edges."""
        raise NotImplementedError

    _flat = _UNSET

    def flat(self) -> Optional[Flat]:
        """Flat description of this oracle, or None if it has none (cached)."""
        if self._flat is _UNSET:
            self._flat = self._make_flat()
        return self._flat

    def _make_flat(self) -> Optional[Flat]:
        return None

    def payload_words(self) -> int:
        """Words of stored payload (e.g. diffs) held by this node."""
        return 0

    @property
    def m(self) -> int:
        return self.shape.m

    @property
    def n(self) -> int:
        return self.shape.n


class ArrayWeights(WeightOracle):
    """Oracle backed by explicit weight arrays; used for general-weight tests.

    ``H`` has shape ``(m + 1, n)``, ``V`` ``(m, n + 1)``, ``D`` ``(m, n)``.
    """

    def __init__(self, H, V, D):
        H = np.ascontiguousarray(H, dtype=np.int64)
        V = np.ascontiguousarray(V, dtype=np.int64)
        D = np.ascontiguousarray(D, dtype=np.int64)
        m, n = V.shape[0], H.shape[1]
        if H.shape != (m + 1, n) or V.shape != (m, n + 1) or D.shape != (m, n):
            raise ContractViolation(
                f"inconsistent weight arrays {H.shape}, {V.shape}, {D.shape}")
        self.shape = GridShape(m, n)
        self.H, self.V, self.D = H, V, D
        self._w_max = max([0] + [int(np.abs(a).max()) for a in (H, V, D) if a.size])

    @classmethod
    def random(cls, m: int, n: int, rng: np.random.Generator, lo: int = -8, hi: int = 8):
        return cls(
            rng.integers(lo, hi + 1, size=(m + 1, n)),
            rng.integers(lo, hi + 1, size=(m, n + 1)),
            rng.integers(lo, hi + 1, size=(m, n)),
        )

    @classmethod
    def constant(cls, m: int, n: int, value: int):
        return cls(np.full((m + 1, n), value), np.full((m, n + 1), value),
                   np.full((m, n), value))

    def weight(self, i, j, kind):
        if kind == EdgeKind.H:
            return int(self.H[i, j])
        if kind == EdgeKind.V:
            return int(self.V[i, j])
        return int(self.D[i, j])

    def max_abs_weight(self):
        return self._w_max

    def _make_flat(self):
        H, V, D = (a if a.size else _EMPTY2 for a in (self.H, self.V, self.D))
        return Flat(BASE_DENSE, H=H, V=V, D=D)


class FunctionWeights(WeightOracle):
    """Oracle around an arbitrary ``f(i, j, kind) -> int``.

    Not flattenable, so sweeps over it run the pure-Python path.
    """

    def __init__(self, shape: tuple[int, int], f: Callable[[int, int, EdgeKind], int],
                 w_max: Optional[int] = None):
        self.shape = GridShape.checked(*shape)
        self._f = f
        self._w_max = w_max

    def weight(self, i, j, kind):
        return int(self._f(i, j, kind))

    def max_abs_weight(self):
        if self._w_max is None:
            # O(mn) time, O(1) space
            self._w_max = max((abs(self.weight(*e)) for e in self.shape.edges()), default=0)
        return self._w_max


class _Restrict(WeightOracle):
    def __init__(self, parent: WeightOracle, m: int, n: int):
        self.parent = parent
        self.shape = GridShape(m, n)

    def weight(self, i, j, kind):
        return self.parent.weight(i, j, kind)

    def max_abs_weight(self):
        return self.parent.max_abs_weight()

    def _make_flat(self):
        return self.parent.flat()


class _Shift(WeightOracle):
    def __init__(self, parent: WeightOracle, di: int, dj: int, m: int, n: int):
        self.parent = parent
        self.di, self.dj = di, dj
        self.shape = GridShape(m, n)

    def weight(self, i, j, kind):
        return self.parent.weight(i + self.di, j + self.dj, kind)

    def max_abs_weight(self):
        return self.parent.max_abs_weight()

    def _make_flat(self):
        f = self.parent.flat()
        if f is None:
            return None
        g = f.derive()
        P = g.P
        P[_R0] += self.di
        P[_C0] += self.dj
        ov_len = P[_OV_LEN]
        if self.di > 0 or ov_len <= self.dj:
            g.ov = _EMPTY1
            P[_OV_LEN] = 0
        else:
            g.ov = f.ov[self.dj:]
            P[_OV_LEN] = ov_len - self.dj
        return g


class _OverrideRow0(WeightOracle):
    def __init__(self, parent: WeightOracle, diffs: np.ndarray):
        self.parent = parent
        self.shape = parent.shape
        self.diffs = diffs
        self._w_max = None

    def weight(self, i, j, kind):
        if kind == EdgeKind.H and i == 0 and j < len(self.diffs):
            return int(self.diffs[j])
        return self.parent.weight(i, j, kind)

    def max_abs_weight(self):
        if self._w_max is None:
            d = int(np.abs(self.diffs).max()) if len(self.diffs) else 0
            self._w_max = max(d, self.parent.max_abs_weight())
        return self._w_max

    def payload_words(self):
        return len(self.diffs)

    def _make_flat(self):
        f = self.parent.flat()
        if f is None:
            return None
        k = len(self.diffs)
        if k == 0:
            return f
        ov = self.diffs
        old_len = f.P[_OV_LEN]
        if old_len > k:
            # only reachable through hand-built compositions; the recursion
            # always overrides a freshly shifted frame
            ov = np.concatenate([ov, f.ov[k:old_len]])
        g = f.derive(ov=ov)
        g.P[_OV_LEN] = len(ov)
        return g


class _Negate(WeightOracle):
    def __init__(self, parent: WeightOracle):
        self.parent = parent
        self.shape = parent.shape

    def weight(self, i, j, kind):
        return -self.parent.weight(i, j, kind)

    def max_abs_weight(self):
        return self.parent.max_abs_weight()

    def _make_flat(self):
        f = self.parent.flat()
        if f is None or not f.pristine:
            return None
        return f.derive(sign=-f.sign)


class _Transpose(WeightOracle):
    def __init__(self, parent: WeightOracle):
        self.parent = parent
        self.shape = GridShape(parent.n, parent.m)

    def weight(self, i, j, kind):
        return self.parent.weight(j, i, kind.swapped)

    def max_abs_weight(self):
        return self.parent.max_abs_weight()

    def _make_flat(self):
        f = self.parent.flat()
        if f is None or not f.pristine:
            return None
        return f.derive(transposed=1 - f.transposed, r0=f.c0, c0=f.r0)


class _PadRows(WeightOracle):
    def __init__(self, parent: WeightOracle, sentinel: int, m_hat: int):
        self.parent = parent
        self.sentinel = sentinel
        self.shape = GridShape(m_hat, parent.n)

    def weight(self, i, j, kind):
        m = self.parent.m
        if kind == EdgeKind.H:
            if i <= m:
                return self.parent.weight(i, j, kind)
            return self.sentinel
        if i < m:
            return self.parent.weight(i, j, kind)
        if kind == EdgeKind.V and j == self.shape.n:
            return 0
        return self.sentinel

    def max_abs_weight(self):
        return self.parent.max_abs_weight()

    def _make_flat(self):
        f = self.parent.flat()
        if f is None or not f.pristine or f.r0 or f.c0:
            return None
        return f.derive(pad_m=self.parent.m, pad_n=self.shape.n, sentinel=self.sentinel)


# --------------------------------------------------------------------------
# combinators


def restrict(w: WeightOracle, m: int, n: int) -> WeightOracle:
    """Upper-left sub-grid ``(m, n)`` of ``w`` with unchanged weights."""
    if not (0 <= m <= w.m and 0 <= n <= w.n):
        raise ContractViolation(f"restrict to {(m, n)} outside {w.shape}")
    return _Restrict(w, m, n)


def shift(w: WeightOracle, di: int, dj: int, m: int, n: int) -> WeightOracle:
    """Sub-grid of shape ``(m, n)`` whose origin sits at ``(di, dj)`` of ``w``."""
    if min(di, dj, m, n) < 0 or di + m > w.m or dj + n > w.n:
        raise ContractViolation(
            f"shift by {(di, dj)} with shape {(m, n)} exceeds {w.shape}")
    return _Shift(w, di, dj, m, n)


def override_row0(w: WeightOracle, diffs: Sequence[int]) -> WeightOracle:
    """Replace the first ``len(diffs)`` row-0 horizontal weights of ``w``."""
    diffs = np.ascontiguousarray(diffs, dtype=np.int64)
    if diffs.ndim != 1 or len(diffs) > w.n:
        raise ContractViolation(f"{len(diffs)} diffs for a grid with n={w.n}")
    return _OverrideRow0(w, diffs)


def negate(w: WeightOracle) -> WeightOracle:
    return _Negate(w)


def transpose(w: WeightOracle) -> WeightOracle:
    """Mirror the grid across its main diagonal (shape ``(n, m)``)."""
    return _Transpose(w)


def pad_rows(w: WeightOracle, sentinel: int) -> tuple[WeightOracle, int]:
    """Extend ``w`` downwards to a power-of-two row count.

    New edges weigh ``sentinel`` except the vertical edges of the last
    column, which weigh 0 so that the corner value is preserved.
    """
    if w.m < 1:
        raise ContractViolation("pad_rows needs m >= 1")
    m_hat = next_pow2(w.m)
    return _PadRows(w, sentinel, m_hat), m_hat
