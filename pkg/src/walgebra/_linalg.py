# Small dense exact linear algebra over mpq; matrices are lists of rows.
from __future__ import annotations

from gmpy2 import mpq

_Z = mpq(0)
_I = mpq(1)


class SingularMatrix(ArithmeticError):
    pass


def zeros(n, m=None):
    m = n if m is None else m
    return [[_Z] * m for _ in range(n)]


def identity(n):
    out = zeros(n)
    for i in range(n):
        out[i][i] = _I
    return out


def matmul(a, b):
    if not a:
        return []
    m = len(b[0]) if b else 0
    out = zeros(len(a), m)
    for i, row in enumerate(a):
        oi = out[i]
        for t, x in enumerate(row):
            if x:
                bt = b[t]
                for j in range(m):
                    y = bt[j]
                    if y:
                        oi[j] += x * y
    return out


def transpose(a):
    return [list(r) for r in zip(*a)] if a else []


def rref(a):
    """Return (reduced matrix, pivot columns)."""
    m = [list(r) for r in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        lead = m[r][c]
        m[r] = [x / lead for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                fac = m[i][c]
                mi, mr = m[i], m[r]
                m[i] = [x - fac * y for x, y in zip(mi, mr)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a):
    if not a:
        return 0
    return len(rref(a)[1])


def nullspace(a, ncols=None):
    """Basis of {v : a v = 0}."""
    if not a:
        n = ncols or 0
        return [[_I if i == j else _Z for i in range(n)] for j in range(n)]
    m, pivots = rref(a)
    n = len(a[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [_Z] * n
        v[fc] = _I
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][fc]
        basis.append(v)
    return basis


def inverse(a):
    n = len(a)
    aug = [list(row) + e for row, e in zip(a, identity(n))]
    m, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return [row[n:] for row in m]


def solve(a, b):
    """Solve a x = b for square nonsingular a; b is a vector."""
    inv = inverse(a)
    return [sum((x * y for x, y in zip(row, b)), _Z) for row in inv]
