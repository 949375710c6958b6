"""Finite-dimensional Lie superalgebras given by structure constants.

Vectors are tuples of rationals indexed by the basis.  Everything here is exact;
no eigenvector is ever re-diagonalized: the basis must already be homogeneous
for parity and for the ad-x grading.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import sympy

from . import _linalg as la
from .exact_arith import Q, Rational, format_rational

_Z = Q(0)
_HALF = Q("1/2")


class MalformedTable(ValueError):
    pass


class NotHomogeneous(ValueError):
    pass


class NotHalfInteger(ValueError):
    pass


class FNotDegreeMinusOne(ValueError):
    pass


class SingularGram(ArithmeticError):
    pass


class CentralityFailure(AssertionError):
    pass


def _sign(p: int) -> int:
    return -1 if p & 1 else 1


class SuperAlgebra:
    """Basis, parities, sparse brackets, invariant form and the pair (x, f)."""

    def __init__(self, name, names, parity, brackets, form, x, f,
                 identity=None, cartan=None):
        n = len(names)
        if len(parity) != n or any(p not in (0, 1) for p in parity):
            raise MalformedTable("parity list must have one 0/1 entry per basis element")
        if len(set(names)) != n:
            raise MalformedTable("basis names must be distinct")
        if len(form) != n or any(len(row) != n for row in form):
            raise MalformedTable("form must be a square table over the basis")
        for vec, label in ((x, "x"), (f, "f")) + (((identity, "identity"),) if identity is not None else ()):
            if len(vec) != n:
                raise MalformedTable(f"{label} must have {n} coordinates")
        table = {}
        for (i, j), terms in brackets.items():
            if not (0 <= i < n and 0 <= j < n):
                raise MalformedTable(f"bracket index out of range: ({i}, {j})")
            clean = {}
            for kk, c in terms.items():
                if not 0 <= kk < n:
                    raise MalformedTable(f"bracket result index out of range: {kk}")
                c = Q(c)
                if c:
                    clean[kk] = clean.get(kk, _Z) + c
            clean = {kk: c for kk, c in clean.items() if c}
            if clean:
                table[(i, j)] = clean
        self.name = name
        self.names = tuple(names)
        self.parity = tuple(int(p) for p in parity)
        self.brackets = table
        self.form = tuple(tuple(Q(v) for v in row) for row in form)
        self.x = tuple(Q(v) for v in x)
        self.f = tuple(Q(v) for v in f)
        self.identity = None if identity is None else tuple(Q(v) for v in identity)
        self.cartan = None if cartan is None else tuple(int(c) for c in cartan)

    def __eq__(self, other):
        if not isinstance(other, SuperAlgebra):
            return NotImplemented
        return (self.name, self.names, self.parity, self.brackets, self.form,
                self.x, self.f, self.identity, self.cartan) == (
            other.name, other.names, other.parity, other.brackets, other.form,
            other.x, other.f, other.identity, other.cartan)

    __hash__ = None

    def __repr__(self):
        return f"SuperAlgebra({self.name!r}, dim={self.dim})"

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def basis_vector(self, i: int):
        return tuple(Q(1) if t == i else _Z for t in range(self.dim))

    def zero(self):
        return (_Z,) * self.dim

    def vec(self, spec) -> tuple:
        """Build a vector from ``{name_or_index: coeff}``."""
        out = [_Z] * self.dim
        for key, c in spec.items():
            i = self.index(key) if isinstance(key, str) else key
            out[i] += Q(c)
        return tuple(out)

    # -- bilinear operations ------------------------------------------
    def bracket_basis(self, i: int, j: int) -> dict:
        return self.brackets.get((i, j), {})

    def bracket(self, a, b):
        out = [_Z] * self.dim
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if not bj:
                    continue
                s = ai * bj
                for kk, c in self.brackets.get((i, j), {}).items():
                    out[kk] += s * c
        return tuple(out)

    def pair(self, a, b) -> Rational:
        acc = _Z
        for i, ai in enumerate(a):
            if ai:
                row = self.form[i]
                for j, bj in enumerate(b):
                    if bj and row[j]:
                        acc += ai * bj * row[j]
        return acc

    def parity_of(self, v):
        ps = {self.parity[i] for i, c in enumerate(v) if c}
        if len(ps) > 1:
            raise NotHomogeneous("vector is not parity-homogeneous")
        return ps.pop() if ps else 0

    def ad(self, a):
        """Matrix of ad a: column j holds the coordinates of [a, u_j]."""
        n = self.dim
        m = la.zeros(n)
        for j in range(n):
            col = self.bracket(a, self.basis_vector(j))
            for kk, c in enumerate(col):
                if c:
                    m[kk][j] = c
        return m

    def supertrace(self, matrix, indices=None) -> Rational:
        idx = range(self.dim) if indices is None else indices
        return sum((_sign(self.parity[i]) * matrix[i][i] for i in idx), _Z)

    def format_vector(self, v) -> str:
        parts = []
        for i, c in enumerate(v):
            if c:
                parts.append(f"{format_rational(c)}*{self.names[i]}")
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# validation

@dataclass
class ValidationReport:
    ok: bool
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def validate(alg: SuperAlgebra) -> ValidationReport:
    n = alg.dim
    par = alg.parity
    bad = []
    e = alg.basis_vector
    for i, j in product(range(n), repeat=2):
        lhs = alg.bracket_basis(i, j)
        rhs = alg.bracket_basis(j, i)
        s = -_sign(par[i] * par[j])
        for kk in set(lhs) | set(rhs):
            if lhs.get(kk, _Z) != s * rhs.get(kk, _Z):
                bad.append(f"super-antisymmetry fails on ({alg.names[i]}, {alg.names[j]})")
                break
        for kk in lhs:
            if par[kk] != (par[i] + par[j]) % 2:
                bad.append(f"bracket [{alg.names[i]}, {alg.names[j]}] has wrong parity")
                break
    for i, j, kk in product(range(n), repeat=3):
        a, b, c = e(i), e(j), e(kk)
        lhs = alg.bracket(a, alg.bracket(b, c))
        r1 = alg.bracket(alg.bracket(a, b), c)
        r2 = alg.bracket(b, alg.bracket(a, c))
        s = _sign(par[i] * par[j])
        if any(x != y + s * z for x, y, z in zip(lhs, r1, r2)):
            bad.append(f"super-Jacobi fails on ({alg.names[i]}, {alg.names[j]}, {alg.names[kk]})")
    G = alg.form
    for i, j in product(range(n), repeat=2):
        if G[i][j] and par[i] != par[j]:
            bad.append(f"form is not even: ({alg.names[i]}|{alg.names[j]}) != 0")
        if G[i][j] != _sign(par[i] * par[j]) * G[j][i]:
            bad.append(f"form is not supersymmetric on ({alg.names[i]}, {alg.names[j]})")
    for i, j, kk in product(range(n), repeat=3):
        lhs = alg.pair(alg.bracket(e(i), e(j)), e(kk))
        rhs = alg.pair(e(i), alg.bracket(e(j), e(kk)))
        if lhs != rhs:
            bad.append(
                f"invariance fails on ({alg.names[i]}, {alg.names[j]}, {alg.names[kk]}): "
                f"([{alg.names[i]},{alg.names[j]}]|{alg.names[kk]}) = {format_rational(lhs)} != "
                f"({alg.names[i]}|[{alg.names[j]},{alg.names[kk]}]) = {format_rational(rhs)}")
    if la.rank([list(r) for r in G]) < n:
        bad.append("form is degenerate")
    for i, c in enumerate(alg.x):
        if c and par[i]:
            bad.append("x is not even")
            break
    return ValidationReport(not bad, bad)


# ---------------------------------------------------------------------------
# grading

@dataclass(frozen=True)
class Grading:
    degree: tuple

    @cached_property
    def S(self):
        return tuple(range(len(self.degree)))

    def S_j(self, j) -> tuple:
        j = Q(j)
        return tuple(i for i, m in enumerate(self.degree) if m == j)

    @cached_property
    def S_pos(self):
        return tuple(i for i, m in enumerate(self.degree) if m > 0)

    @cached_property
    def S_neg(self):
        return tuple(i for i, m in enumerate(self.degree) if m < 0)

    @cached_property
    def S_zero(self):
        return self.S_j(0)

    @cached_property
    def S_half(self):
        return self.S_j(_HALF)

    @cached_property
    def degrees(self):
        return tuple(sorted(set(self.degree), reverse=True))

    def dims(self) -> dict:
        return {m: len(self.S_j(m)) for m in self.degrees}

    def selector(self, which):
        """Index tuple for 'pos', 'neg', 'zero', 'nonzero', '>=0', '<=0' or a degree."""
        if which == "pos":
            return self.S_pos
        if which == "neg":
            return self.S_neg
        if which == "zero":
            return self.S_zero
        if which == "nonzero":
            return tuple(i for i, m in enumerate(self.degree) if m != 0)
        if which == ">=0":
            return tuple(i for i, m in enumerate(self.degree) if m >= 0)
        if which == "<=0":
            return tuple(i for i, m in enumerate(self.degree) if m <= 0)
        if which == "all":
            return self.S
        return self.S_j(which)

    def project(self, v, which):
        keep = set(self.selector(which))
        return tuple(c if i in keep else _Z for i, c in enumerate(v))

    def degree_of(self, v):
        ds = {self.degree[i] for i, c in enumerate(v) if c}
        if len(ds) > 1:
            raise NotHomogeneous("vector is not homogeneous for the grading")
        return ds.pop() if ds else None

    def in_degrees(self, v, which) -> bool:
        keep = set(self.selector(which))
        return all(i in keep for i, c in enumerate(v) if c)


def grade_by_x(alg: SuperAlgebra) -> Grading:
    degs = []
    for j in range(alg.dim):
        col = alg.bracket(alg.x, alg.basis_vector(j))
        m = col[j]
        if any(c for i, c in enumerate(col) if i != j):
            raise NotHomogeneous(f"{alg.names[j]} is not an ad x eigenvector")
        if (2 * m).denominator != 1:
            raise NotHalfInteger(f"ad x eigenvalue {format_rational(m)} on {alg.names[j]}")
        degs.append(m)
    return Grading(tuple(degs))


# ---------------------------------------------------------------------------
# centralizer of f, goodness and the ad f: g_1/2 -> g_-1/2 check

@dataclass(frozen=True)
class CentralizerData:
    basis: tuple
    by_degree: dict
    good: bool
    iso_half: bool

    @property
    def dim(self):
        return len(self.basis)


def _restricted_map(alg, op, src, dst):
    """Matrix (rows dst, cols src) of a linear map given on basis vectors."""
    m = la.zeros(len(dst), len(src))
    for c, j in enumerate(src):
        img = op(alg.basis_vector(j))
        for r, i in enumerate(dst):
            m[r][c] = img[i]
        stray = [i for i, v in enumerate(img) if v and i not in dst]
        if stray:
            raise NotHomogeneous("map does not respect the grading")
    return m


def check_datum(alg: SuperAlgebra, grading: Grading) -> CentralizerData:
    fdeg = {grading.degree[i] for i, c in enumerate(alg.f) if c}
    if fdeg != {Q(-1)}:
        if any(c for c in alg.f):
            raise FNotDegreeMinusOne("f is not concentrated in degree -1")
    adf = lambda v: alg.bracket(alg.f, v)
    by_degree = {}
    basis = []
    for m in grading.degrees:
        vecs = []
        # ad f is even, so the kernel splits by parity
        for q in (0, 1):
            src = tuple(i for i in grading.S_j(m) if alg.parity[i] == q)
            if not src:
                continue
            dst = tuple(i for i in grading.S_j(m - 1) if alg.parity[i] == q)
            mat = _restricted_map(alg, adf, src, dst) if dst else []
            for kv in la.nullspace(mat, len(src)):
                v = [_Z] * alg.dim
                for c, j in enumerate(src):
                    v[j] = kv[c]
                vecs.append(tuple(v))
        by_degree[m] = tuple(vecs)
        basis.extend(vecs)
    good = all(not vecs for m, vecs in by_degree.items() if m > 0)
    half, mhalf = grading.S_half, grading.S_j(-_HALF)
    if len(half) != len(mhalf):
        iso = False
    elif not half:
        iso = True
    else:
        iso = la.rank(_restricted_map(alg, adf, half, mhalf)) == len(half)
    return CentralizerData(tuple(basis), by_degree, good, iso)


# ---------------------------------------------------------------------------
# dual bases

@dataclass(frozen=True)
class DualBases:
    dual: tuple            # u^i as vectors, (u_i | u^j) = delta
    neutral_dual: dict     # i in S_1/2 -> {l in S_1/2: coeff} giving Phi^i
    half_lift: dict        # i in S_1/2 -> u^(i) in g_1/2 with u^i = [u^(i), f]


def neutral_form(alg: SuperAlgebra, i: int, j: int) -> Rational:
    return alg.pair(alg.f, alg.bracket(alg.basis_vector(i), alg.basis_vector(j)))


def dual_basis(alg: SuperAlgebra, grading: Grading) -> DualBases:
    n = alg.dim
    G = [list(r) for r in alg.form]
    try:
        inv = la.inverse(G)
    except la.SingularMatrix as exc:
        raise SingularGram("invariant form is degenerate") from exc
    dual = tuple(tuple(inv[l][j] for l in range(n)) for j in range(n))
    half = grading.S_half
    N = [[neutral_form(alg, i, j) for j in half] for i in half]
    if half:
        try:
            Ninv = la.inverse(N)
        except la.SingularMatrix as exc:
            raise SingularGram("neutral pairing (f|[a,b]) on g_1/2 is degenerate") from exc
    neutral = {}
    lift = {}
    for a, i in enumerate(half):
        coeffs = {l: Ninv[b][a] for b, l in enumerate(half) if Ninv[b][a]}
        neutral[i] = coeffs
        v = [_Z] * n
        for l, c in coeffs.items():
            v[l] = c
        lift[i] = tuple(v)
    return DualBases(dual, neutral, lift)


# ---------------------------------------------------------------------------
# Killing forms, Casimir, dual Coxeter number

def killing_form(alg: SuperAlgebra, grading: Grading | None, a, b, selector="all") -> Rational:
    """str_g(p (ad a)(ad b)) with p the projection onto the selected degrees."""
    m = la.matmul(alg.ad(a), alg.ad(b))
    idx = None if grading is None or selector == "all" else grading.selector(selector)
    return alg.supertrace(m, idx)


@dataclass(frozen=True)
class NotScalar:
    omega: tuple

    def apply(self, v):
        return tuple(sum((row[j] * v[j] for j in range(len(v))), _Z) for row in self.omega)


def casimir_matrix(alg: SuperAlgebra, dual, indices=None):
    """sum_j (ad u^j)(ad u_j) over the given indices (default: all)."""
    n = alg.dim
    acc = la.zeros(n)
    for j in (range(n) if indices is None else indices):
        m = la.matmul(alg.ad(dual[j]), alg.ad(alg.basis_vector(j)))
        for r in range(n):
            for c in range(n):
                if m[r][c]:
                    acc[r][c] += m[r][c]
    return acc


def dual_coxeter(alg: SuperAlgebra, duals: DualBases | None = None):
    """h^vee as a rational if the Casimir is scalar on g, else NotScalar."""
    if duals is None:
        duals = dual_basis(alg, grade_by_x(alg))
    om = casimir_matrix(alg, duals.dual)
    c = om[0][0] if alg.dim else _Z
    scalar = all(om[r][s] == (c if r == s else _Z)
                 for r in range(alg.dim) for s in range(alg.dim))
    if scalar:
        return c / 2
    return NotScalar(tuple(tuple(r) for r in om))


# ---------------------------------------------------------------------------
# rho vectors

@dataclass(frozen=True)
class RhoData:
    rho: tuple
    rho_pos: tuple
    rho_j: dict
    positive_roots: tuple      # basis indices of positive root vectors
    cartan: tuple
    weights: dict              # basis index -> weight on the cartan basis
    theta: tuple | None        # highest root as a vector of h, if unique


def find_cartan(alg: SuperAlgebra, grading: Grading) -> tuple:
    if alg.cartan is not None:
        return alg.cartan
    cands = []
    for i in grading.S_zero:
        if alg.parity[i]:
            continue
        adm = alg.ad(alg.basis_vector(i))
        if all(not adm[r][c] for r in range(alg.dim) for c in range(alg.dim) if r != c):
            cands.append(i)
    return tuple(cands)


def _weight(alg, cartan, j):
    out = []
    for h in cartan:
        col = alg.bracket(alg.basis_vector(h), alg.basis_vector(j))
        if any(c for i, c in enumerate(col) if i != j):
            raise NotHomogeneous(f"{alg.names[j]} is not a root vector for the Cartan subalgebra")
        out.append(col[j])
    return tuple(out)


def weight_to_vector(alg: SuperAlgebra, cartan, weight):
    """Identify a functional on h with an element of h through the form."""
    G = [[alg.form[a][b] for b in cartan] for a in cartan]
    try:
        y = la.solve(G, list(weight))
    except la.SingularMatrix as exc:
        raise SingularGram("form restricted to the Cartan subalgebra is degenerate") from exc
    v = [_Z] * alg.dim
    for c, h in zip(y, cartan):
        v[h] = c
    return tuple(v)


def _half_signed_sum(alg, duals, indices):
    acc = [_Z] * alg.dim
    for i in indices:
        s = _sign(alg.parity[i])
        br = alg.bracket(alg.basis_vector(i), duals.dual[i])
        for t, c in enumerate(br):
            acc[t] += s * c
    return tuple(c / 2 for c in acc)


def rho_vectors(alg: SuperAlgebra, grading: Grading, duals: DualBases,
                centralizer: CentralizerData | None = None) -> RhoData:
    rho_pos = _half_signed_sum(alg, duals, grading.S_pos)
    rho_j = {m: _half_signed_sum(alg, duals, grading.S_j(m))
             for m in grading.degrees if m > 0}
    cartan = find_cartan(alg, grading)
    cset = set(cartan)
    weights = {j: _weight(alg, cartan, j) for j in range(alg.dim) if j not in cset}
    pos = []
    for j, w in weights.items():
        m = grading.degree[j]
        if m > 0:
            pos.append(j)
        elif m == 0:
            lead = next((c for c in w if c), _Z)
            if lead > 0:
                pos.append(j)
    acc = [_Z] * len(cartan)
    for j in pos:
        s = _sign(alg.parity[j])
        for t, c in enumerate(weights[j]):
            acc[t] += s * c
    rho = weight_to_vector(alg, cartan, [c / 2 for c in acc])
    top = max(grading.degree)
    tops = [j for j in pos if grading.degree[j] == top]
    theta = weight_to_vector(alg, cartan, weights[tops[0]]) if len(tops) == 1 else None
    if centralizer is not None and centralizer.iso_half:
        for i in grading.S_zero:
            if any(alg.bracket(rho_pos, alg.basis_vector(i))):
                raise CentralityFailure(
                    f"rho_>0 does not commute with {alg.names[i]} although ad f is an "
                    "isomorphism g_1/2 -> g_-1/2")
        for i in grading.S_zero:
            v = alg.basis_vector(i)
            lhs = alg.supertrace(alg.ad(v), grading.S_pos)
            if lhs != 2 * alg.pair(rho_pos, v):
                raise CentralityFailure(f"str_g>0 ad {alg.names[i]} != 2(rho_>0|{alg.names[i]})")
    return RhoData(rho, rho_pos, rho_j, tuple(sorted(pos)), cartan, weights, theta)


# ---------------------------------------------------------------------------
# Omega_0

@dataclass(frozen=True)
class Omega0Data:
    matrix: tuple
    blocks: dict          # degree -> square block restricted to g_j
    diagonalizable: dict  # degree j > 0 -> True / False / None (irrational spectrum)
    eigenvalues: dict     # degree j > 0 -> rational eigenvalues (with multiplicity) or None


def _diagonalizable_over_q(block):
    n = len(block)
    if n == 0:
        return True, []
    M = sympy.Matrix([[sympy.Rational(int(c.numerator), int(c.denominator)) for c in row]
                      for row in block])
    lam = sympy.Symbol("lam")
    cp = M.charpoly(lam).as_expr()
    _, factors = sympy.factor_list(cp, lam)
    roots = []
    for fac, mult in factors:
        poly = sympy.Poly(fac, lam)
        if poly.degree() != 1:
            return None, None
        cs = poly.all_coeffs()
        roots.extend([-cs[1] / cs[0]] * mult)
    distinct = sorted(set(roots))
    prod = sympy.eye(n)
    for r in distinct:
        prod = prod * (M - r * sympy.eye(n))
    vals = [Q(f"{sympy.fraction(r)[0]}/{sympy.fraction(r)[1]}") for r in sorted(roots)]
    return prod.is_zero_matrix, vals


def omega0(alg: SuperAlgebra, grading: Grading, duals: DualBases) -> Omega0Data:
    om = casimir_matrix(alg, duals.dual, grading.S_zero)
    blocks = {}
    diag = {}
    eig = {}
    for m in grading.degrees:
        idx = grading.S_j(m)
        blocks[m] = tuple(tuple(om[r][c] for c in idx) for r in idx)
        if m > 0:
            diag[m], eig[m] = _diagonalizable_over_q(blocks[m])
    return Omega0Data(tuple(tuple(r) for r in om), blocks, diag, eig)


def apply_matrix(matrix, v):
    return tuple(sum((row[j] * v[j] for j in range(len(v)) if v[j]), _Z) for row in matrix)


# ---------------------------------------------------------------------------
# construction from supermatrices

def supercommutator(a, b, pa, pb):
    ab = la.matmul(a, b)
    ba = la.matmul(b, a)
    s = _sign(pa * pb)
    return [[x - s * y for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)]


def supertrace_matrix(m, row_parity):
    return sum((_sign(p) * m[i][i] for i, p in enumerate(row_parity)), _Z)


def from_supermatrices(name, names, parity, mats, row_parity, x, f, form_scale=1,
                       identity=None, cartan=None):
    """Structure constants and the form form_scale * str(ab) from a matrix basis.

    ``mats`` are square matrices (lists of rows) over a superspace whose
    coordinate parities are ``row_parity``; ``x``, ``f``, ``identity`` are
    given as ``{name: coeff}`` dicts.
    """
    mats = [[[Q(c) for c in row] for row in m] for m in mats]
    flat = [[c for row in m for c in row] for m in mats]
    n = len(mats)
    A = la.transpose(flat)
    # matrix entries that determine the coordinates of a span element
    _, rows = la.rref(flat)
    if len(rows) != n:
        raise MalformedTable("matrix basis is linearly dependent")
    sub = [[A[r][c] for c in range(n)] for r in rows]
    sub_inv = la.inverse(sub)

    def coords(m):
        v = [c for row in m for c in row]
        y = [sum((sub_inv[i][t] * v[rows[t]] for t in range(n)), _Z) for i in range(n)]
        recon = [sum((A[r][c] * y[c] for c in range(n)), _Z) for r in range(len(v))]
        if recon != v:
            raise MalformedTable("matrix basis is not closed under the bracket")
        return y

    brackets = {}
    for i in range(n):
        for j in range(n):
            y = coords(supercommutator(mats[i], mats[j], parity[i], parity[j]))
            terms = {t: c for t, c in enumerate(y) if c}
            if terms:
                brackets[(i, j)] = terms
    scale = Q(form_scale)
    form = [[scale * supertrace_matrix(la.matmul(mats[i], mats[j]), row_parity)
             for j in range(n)] for i in range(n)]

    def vec(spec):
        out = [_Z] * n
        for key, c in spec.items():
            out[names.index(key)] += Q(c)
        return out

    return SuperAlgebra(name, names, parity, brackets, form, vec(x), vec(f),
                        identity=None if identity is None else vec(identity),
                        cartan=None if cartan is None else [names.index(c) for c in cartan])
