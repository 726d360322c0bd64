"""Reference implementations that share no code with the package."""

import itertools


def lcs_table(a, b):
    L = [[0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i in range(1, len(a) + 1):
        for j in range(1, len(b) + 1):
            L[i][j] = max(L[i - 1][j], L[i][j - 1], L[i - 1][j - 1] + (a[i - 1] == b[j - 1]))
    return L


def lcs_dp(a, b):
    return lcs_table(a, b)[-1][-1]


def lcs_brute(a, b):
    """Longest subsequence of ``a`` that also occurs in ``b`` (tiny inputs only)."""
    def is_subseq(x, y):
        it = iter(y)
        return all(c in it for c in x)
    for k in range(len(a), -1, -1):
        for idx in itertools.combinations(range(len(a)), k):
            if is_subseq([a[i] for i in idx], b):
                return k
    return 0


def levenshtein(a, b, ins=1, dele=1, sub=1):
    """Min-plus table; costs may be ints or callables."""
    ic = ins if callable(ins) else (lambda y: ins)
    dc = dele if callable(dele) else (lambda x: dele)
    sc = sub if callable(sub) else (lambda x, y: sub)
    D = [[0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i in range(len(a) + 1):
        for j in range(len(b) + 1):
            if i == 0 and j == 0:
                continue
            best = []
            if i:
                best.append(D[i - 1][j] + dc(a[i - 1]))
            if j:
                best.append(D[i][j - 1] + ic(b[j - 1]))
            if i and j:
                same = a[i - 1] == b[j - 1]
                best.append(D[i - 1][j - 1] + (0 if same else sc(a[i - 1], b[j - 1])))
            D[i][j] = min(best)
    return D[-1][-1]


def dense_table(H, V, D):
    """Longest-path table for explicit weight arrays.

    ``H[i][j]`` weighs (i,j)->(i,j+1), ``V[i][j]`` weighs (i,j)->(i+1,j),
    ``D[i][j]`` weighs (i,j)->(i+1,j+1).
    """
    m, n = len(V), len(H[0]) if len(H) else 0
    T = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(m + 1):
        for j in range(n + 1):
            if i == 0 and j == 0:
                continue
            cand = []
            if j:
                cand.append(T[i][j - 1] + int(H[i][j - 1]))
            if i:
                cand.append(T[i - 1][j] + int(V[i - 1][j]))
            if i and j:
                cand.append(T[i - 1][j - 1] + int(D[i - 1][j - 1]))
            T[i][j] = max(cand)
    return T


def all_paths(m, n, start=(0, 0), end=None):
    """Every monotone path as a list of ((i, j), kind) edges, kind in 'HVD'."""
    end = end or (m, n)

    def walk(i, j):
        if (i, j) == end:
            yield []
            return
        if j < end[1]:
            for rest in walk(i, j + 1):
                yield [((i, j), "H")] + rest
        if i < end[0]:
            for rest in walk(i + 1, j):
                yield [((i, j), "V")] + rest
        if i < end[0] and j < end[1]:
            for rest in walk(i + 1, j + 1):
                yield [((i, j), "D")] + rest

    yield from walk(*start)


def path_vertices(path, start=(0, 0)):
    out = [start]
    for (i, j), kind in path:
        out.append({"H": (i, j + 1), "V": (i + 1, j), "D": (i + 1, j + 1)}[kind])
    return out
