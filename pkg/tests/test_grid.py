import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import all_paths, dense_table
from sublcs import (
    ArrayWeights,
    ContractViolation,
    Edge,
    EdgeKind,
    FunctionWeights,
    GridShape,
    full_table,
    lcs_oracle,
    negate,
    override_row0,
    pad_rows,
    restrict,
    shift,
    transpose,
)
from sublcs.grid import contamination_threshold, next_pow2, sentinel_for
from sublcs.standard import sweep_lengths

H_, V_, D_ = EdgeKind.H, EdgeKind.V, EdgeKind.D

seeds = st.integers(0, 2**32 - 1)


def rand_grid(m, n, seed, lo=-8, hi=8):
    return ArrayWeights.random(m, n, np.random.default_rng(seed), lo, hi)


def edgewise_equal(a, b):
    assert a.shape == b.shape
    return all(a(e) == b(e) for e in a.shape.edges())


def scalar_clone(w):
    # same weights, but forces the pure-Python sweep
    return FunctionWeights(w.shape, w.weight)


# --- shape and edges ------------------------------------------------------

def test_shape_counts():
    g = GridShape(2, 3)
    assert g.vertex_count == 12
    assert g.edge_count == 2 * 4 + 3 * 3 + 2 * 3
    assert len(list(g.edges())) == g.edge_count


def test_shape_rejects_negative():
    with pytest.raises(ContractViolation):
        GridShape.checked(-1, 3)


def test_edge_head_and_swap():
    assert Edge(1, 2, H_).head == (1, 3)
    assert Edge(1, 2, V_).head == (2, 2)
    assert Edge(1, 2, D_).head == (2, 3)
    assert H_.swapped is V_ and V_.swapped is H_ and D_.swapped is D_


def test_call_rejects_missing_edge():
    w = rand_grid(2, 2, 0)
    with pytest.raises(ContractViolation):
        w(Edge(2, 0, V_))
    with pytest.raises(ContractViolation):
        w(Edge(0, 2, H_))


def test_array_weights_shape_check():
    with pytest.raises(ContractViolation):
        ArrayWeights(np.zeros((3, 2)), np.zeros((2, 3)), np.zeros((2, 3)))


# --- restrict --------------------------------------------------------------

def test_restrict_example():
    w = rand_grid(4, 6, 1)
    r = restrict(w, 2, 3)
    assert r.shape == (2, 3)
    assert r(Edge(1, 1, D_)) == w(Edge(1, 1, D_))


def test_restrict_full_is_identity():
    w = rand_grid(3, 5, 2)
    assert edgewise_equal(restrict(w, 3, 5), w)


def test_restrict_lcs_table_block():
    w = lcs_oracle("abc", "abdc")
    sub = full_table(restrict(w, 1, 2))
    full = full_table(w)
    assert sub == [row[:3] for row in full[:2]]
    assert full == [[0, 0, 0, 0, 0], [0, 1, 1, 1, 1], [0, 1, 2, 2, 2], [0, 1, 2, 2, 3]]


@pytest.mark.parametrize("m,n", [(5, 3), (4, 7), (-1, 0), (0, -1)])
def test_restrict_out_of_range(m, n):
    with pytest.raises(ContractViolation):
        restrict(rand_grid(4, 6, 3), m, n)


# --- shift -----------------------------------------------------------------

def test_shift_identity():
    w = rand_grid(4, 6, 4)
    assert edgewise_equal(shift(w, 0, 0, 4, 6), w)


def test_shift_example():
    w = rand_grid(4, 6, 5)
    s = shift(w, 2, 3, 2, 3)
    assert s(Edge(0, 0, H_)) == w(Edge(2, 3, H_))
    assert s(Edge(1, 2, D_)) == w(Edge(3, 5, D_))


@pytest.mark.parametrize("args", [(3, 0, 2, 6), (0, 4, 4, 3), (-1, 0, 1, 1)])
def test_shift_out_of_range(args):
    with pytest.raises(ContractViolation):
        shift(rand_grid(4, 6, 6), *args)


@settings(max_examples=40, deadline=None)
@given(seed=seeds, hb=st.integers(0, 9))
def test_shift_rebased_block(seed, hb):
    # bottom-right block from the entry row, with row 0 fed the upper lengths
    w = rand_grid(8, 9, seed)
    T = dense_table(w.H, w.V, w.D)
    half = 4
    moved = shift(w, half, hb, half, 9 - hb)
    diffs = [T[half][j + 1] - T[half][j] for j in range(hb, 9)]
    lower = override_row0(moved, diffs)
    L = full_table(lower)
    # rebased: best over entry columns hb+q of (length to the entry) plus
    # (best path from the entry in the original grid)
    from_entry = [dense_table(w.H[half:, hb + q:], w.V[half:, hb + q:], w.D[half:, hb + q:])
                  for q in range(9 - hb + 1)]
    for i in range(half + 1):
        for j in range(9 - hb + 1):
            want = max(T[half][hb + q] + from_entry[q][i][j - q] for q in range(j + 1))
            assert L[i][j] + T[half][hb] == want


# --- override_row0 ---------------------------------------------------------

def test_override_empty_is_identity():
    w = rand_grid(3, 4, 7)
    assert edgewise_equal(override_row0(w, []), w)


def test_override_single():
    w = rand_grid(3, 4, 8)
    o = override_row0(w, [7])
    assert o(Edge(0, 0, H_)) == 7
    assert o(Edge(0, 1, H_)) == w(Edge(0, 1, H_))
    assert o(Edge(1, 0, H_)) == w(Edge(1, 0, H_))


def test_override_too_long():
    with pytest.raises(ContractViolation):
        override_row0(rand_grid(3, 2, 9), [1, 2, 3])


@settings(max_examples=40, deadline=None)
@given(seed=seeds, hb=st.integers(0, 5), width=st.integers(1, 4))
def test_override_telescopes(seed, hb, width):
    w = rand_grid(4, 10, seed)
    T = dense_table(w.H, w.V, w.D)
    ell = T[4]
    diffs = [ell[hb + q + 1] - ell[hb + q] for q in range(width)]
    o = override_row0(shift(w, 0, hb, 4, 10 - hb), diffs)
    for q in range(width + 1):
        total = sum(o(Edge(0, k, H_)) for k in range(q))
        assert total == ell[q + hb] - ell[hb]


# --- negate ----------------------------------------------------------------

def test_negate_involution_and_value():
    w = ArrayWeights.constant(2, 2, 3)
    assert negate(w)(Edge(0, 0, H_)) == -3
    assert edgewise_equal(negate(negate(w)), w)


@settings(max_examples=25, deadline=None)
@given(seed=seeds)
def test_negate_gives_shortest_path(seed):
    w = rand_grid(4, 4, seed)
    costs = [sum(w(Edge(i, j, EdgeKind[k])) for (i, j), k in p) for p in all_paths(4, 4)]
    assert full_table(negate(w))[4][4] == -min(costs)


# --- transpose -------------------------------------------------------------

def test_transpose_involution():
    w = rand_grid(3, 5, 10)
    t = transpose(w)
    assert t.shape == (5, 3)
    assert t(Edge(2, 1, H_)) == w(Edge(1, 2, V_))
    assert edgewise_equal(transpose(t), w)


def test_transpose_lcs_symmetry():
    a = full_table(lcs_oracle("ab", "abb"))[2][3]
    b = full_table(lcs_oracle("abb", "ab"))[3][2]
    assert a == b == 2


@pytest.mark.parametrize("seed", range(10))
def test_transpose_corner(seed):
    w = rand_grid(3 + seed % 4, 6, seed)
    assert full_table(transpose(w))[6][w.m] == full_table(w)[w.m][6]


# --- pad_rows --------------------------------------------------------------

def test_next_pow2():
    assert [next_pow2(m) for m in (1, 2, 3, 4, 5, 8, 9)] == [1, 2, 4, 4, 8, 8, 16]
    with pytest.raises(ContractViolation):
        next_pow2(0)


def test_pad_shape_and_dummy_edges():
    w = rand_grid(3, 4, 11)
    p, m_hat = pad_rows(w, -1000)
    assert m_hat == 4 and p.shape == (4, 4)
    assert p(Edge(3, 0, D_)) == -1000
    assert p(Edge(3, 0, V_)) == -1000
    assert p(Edge(4, 1, H_)) == -1000
    assert p(Edge(3, 4, V_)) == 0
    # genuine bottom row keeps its horizontal edges
    assert p(Edge(3, 1, H_)) == w(Edge(3, 1, H_))


def test_pad_power_of_two_untouched():
    w = rand_grid(4, 3, 12)
    p, m_hat = pad_rows(w, -99)
    assert m_hat == 4
    assert edgewise_equal(p, w)


def test_pad_needs_a_row():
    with pytest.raises(ContractViolation):
        pad_rows(rand_grid(0, 3, 0), -5)


@settings(max_examples=40, deadline=None)
@given(seed=seeds)
def test_pad_preserves_corner(seed):
    w = rand_grid(5, 7, seed)
    s = sentinel_for(8, 7, 8)
    p, m_hat = pad_rows(w, s)
    assert m_hat == 8
    assert full_table(p)[8][7] == full_table(w)[5][7]


def test_sentinel_dominated():
    # one sentinel edge is worse than any genuine path
    m_hat, n, w_max = 4, 6, 8
    s = sentinel_for(m_hat, n, w_max)
    best_genuine_low = -(m_hat + n) * w_max
    worst_with_sentinel = s + (m_hat + n) * w_max
    assert worst_with_sentinel < contamination_threshold(m_hat, n, w_max) <= best_genuine_low


# --- compiled and scalar evaluation agree ---------------------------------

def chains(w, rng):
    """A few random combinator chains of the kind the recursion builds."""
    p, m_hat = pad_rows(w, sentinel_for(next_pow2(w.m), w.n, 8))
    yield p
    yield transpose(w)
    yield pad_rows(transpose(w), -500)[0]
    yield negate(w)
    for _ in range(4):
        half = m_hat // 2
        hb = int(rng.integers(0, w.n + 1))
        moved = shift(p, half, hb, half, w.n - hb)
        k = int(rng.integers(0, w.n - hb + 1))
        o = override_row0(moved, rng.integers(-20, 20, size=k))
        yield o
        if o.m >= 2:
            q = o.m // 2
            dj = int(rng.integers(0, o.n + 1))
            inner = shift(o, q, dj, q, o.n - dj)
            yield override_row0(inner, rng.integers(-9, 9, size=int(rng.integers(0, o.n - dj + 1))))
            yield override_row0(shift(o, 0, dj, q, o.n - dj), [])
        yield restrict(o, o.m, int(rng.integers(0, o.n + 1)))


@settings(max_examples=40, deadline=None)
@given(seed=seeds, m=st.integers(1, 9), n=st.integers(1, 9))
def test_flat_kernel_matches_scalar(seed, m, n):
    rng = np.random.default_rng(seed)
    w = rand_grid(m, n, seed)
    for c in chains(w, rng):
        targets = range(0, c.n + 1)
        fast = sweep_lengths(c, targets).tolist()
        slow = sweep_lengths(scalar_clone(c), targets).tolist()
        assert fast == slow == full_table(c)[c.m]


def test_lcs_chain_flat_matches_scalar():
    rng = np.random.default_rng(3)
    w = lcs_oracle("abracadabra", "cadabrabr")
    for c in chains(w, rng):
        assert sweep_lengths(c, range(c.n + 1)).tolist() == full_table(c)[c.m]


def test_oracles_are_pure():
    w = rand_grid(4, 5, 13)
    o = override_row0(shift(w, 2, 1, 2, 4), [3, -1])
    first = [o(e) for e in o.shape.edges()]
    second = [o(e) for e in reversed(list(o.shape.edges()))][::-1]
    assert first == second
