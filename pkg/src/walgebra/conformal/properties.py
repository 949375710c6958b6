"""Property checks for the lambda-bracket calculus, plus the charge and
conformal-weight gradings.

Each ``check_*`` returns the first nonzero residual it meets, or None.  The
residual is a LambdaPoly, VAExpr or a dict {(i, j): VAExpr} for the
two-variable Jacobi identity.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import comb

from ..exact_arith import K, ONE, Q, scalar
from .expr import CURRENT, NEUTRAL, PHI, PHI_UP, LambdaPoly, VAExpr

# ---------------------------------------------------------------------------
# gradings


def charge(m) -> int:
    """+1 per phi_i factor, -1 per phi^i factor."""
    return sum(1 if f[0] == PHI else -1 if f[0] == PHI_UP else 0 for f in m)


def factor_weight(f, degree):
    kind, i, n = f
    if kind == NEUTRAL:
        w = Q("1/2")
    elif kind == PHI_UP:
        w = degree[i]
    else:                       # currents and phi_i: 1 - m_i
        w = 1 - degree[i]
    return w + n


def conformal_weight(m, grading):
    deg = grading.degree if hasattr(grading, "degree") else grading
    return sum((factor_weight(f, deg) for f in m), Q(0))


def expr_weights(e: VAExpr, grading):
    return {conformal_weight(m, grading) for m in e.terms}


def expr_charges(e: VAExpr):
    return {charge(m) for m in e.terms}


# ---------------------------------------------------------------------------
# random inputs

def generators(E):
    return sorted(E.parity)


def random_word(E, rng, length, max_der=1):
    gens = generators(E)
    return tuple((g[0], g[1], rng.randint(0, max_der))
                 for g in (rng.choice(gens) for _ in range(length)))


def _rand_coeff(rng):
    c = Q(Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2, 3])))
    return scalar(c) * (K if rng.random() < 0.2 else ONE)


def random_expr(E, rng, degree, terms=2, max_der=1):
    """Parity-homogeneous normal-form expression built from words of length
    at most ``degree``; falls back to a single term if parities disagree."""
    for _ in range(50):
        first = random_word(E, rng, rng.randint(1, degree), max_der)
        out = E.from_word(first, _rand_coeff(rng))
        if not out:
            continue
        p = E.mparity(first)
        for _ in range(terms - 1):
            w = random_word(E, rng, rng.randint(1, degree), max_der)
            if E.mparity(w) == p:
                out = out + E.from_word(w, _rand_coeff(rng))
        if out and E.expr_parity(out) is not None:
            return out
    return E.gen(generators(E)[0])


def random_pairs(E, seed, count=100, total_degree=3):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        da = rng.randint(1, total_degree - 1)
        db = rng.randint(1, total_degree - da)
        out.append((random_expr(E, rng, da), random_expr(E, rng, db)))
    return out


# ---------------------------------------------------------------------------
# helpers on lambda-polynomials

def _par(E, e):
    p = E.expr_parity(e)
    return 0 if p is None else p


def _sgn(p):
    return -1 if p & 1 else 1


def reflect(E, lp: LambdaPoly) -> LambdaPoly:
    """sum_n (-l - d)^n C_n, i.e. [b_{-l-d} a] from [b_l a]."""
    out = {}
    for n, C in enumerate(lp.coeffs):
        if not C:
            continue
        for m in range(n + 1):
            t = E.derive(C, n - m) if n - m else C
            c = comb(n, m) * _sgn(n)         # (-1)^m (-1)^{n-m}
            out[m] = out.get(m, VAExpr()) + t * c
    return LambdaPoly(out)


def shift_by_d(E, lp: LambdaPoly) -> LambdaPoly:
    """(d + l) applied to a lambda-polynomial."""
    out = {}
    for n, C in enumerate(lp.coeffs):
        out[n] = out.get(n, VAExpr()) + E.derive(C)
        out[n + 1] = out.get(n + 1, VAExpr()) + C
    return LambdaPoly(out)


def times_lambda(lp: LambdaPoly, c=1) -> LambdaPoly:
    return LambdaPoly({n + 1: C * c for n, C in enumerate(lp.coeffs)})


def _clean2(d):
    return {k: v for k, v in d.items() if v}


def _add2(d, key, e):
    d[key] = d.get(key, VAExpr()) + e


# ---------------------------------------------------------------------------
# the identities

def check_skew(E, a, b):
    lhs = E.lambda_bracket(a, b)
    rhs = reflect(E, E.lambda_bracket(b, a)) * (-_sgn(_par(E, a) * _par(E, b)))
    r = lhs - rhs
    return r or None


def check_sesqui(E, a, b):
    base = E.lambda_bracket(a, b)
    r1 = E.lambda_bracket(E.derive(a), b) - times_lambda(base, -1)
    if r1:
        return r1
    r2 = E.lambda_bracket(a, E.derive(b)) - shift_by_d(E, base)
    return r2 or None


def jacobi_residual(E, a, b, c) -> dict:
    """[a_l[b_m c]] - p(a,b)[b_m[a_l c]] - [[a_l b]_{l+m} c] as {(i, j): coeff of l^i m^j}."""
    out = {}
    for j, X in enumerate(E.lambda_bracket(b, c).coeffs):
        if X:
            for i, Y in enumerate(E.lambda_bracket(a, X).coeffs):
                _add2(out, (i, j), Y)
    s = _sgn(_par(E, a) * _par(E, b))
    for i, Z in enumerate(E.lambda_bracket(a, c).coeffs):
        if Z:
            for j, W in enumerate(E.lambda_bracket(b, Z).coeffs):
                _add2(out, (i, j), W * (-s))
    for n, A in enumerate(E.lambda_bracket(a, b).coeffs):
        if A:
            for m, B in enumerate(E.lambda_bracket(A, c).coeffs):
                if B:
                    for r in range(m + 1):
                        _add2(out, (n + r, m - r), B * (-comb(m, r)))
    return _clean2(out)


def check_jacobi(E, a, b, c):
    return jacobi_residual(E, a, b, c) or None


def wick_rhs(E, a, b, c) -> LambdaPoly:
    """:[a_l b] c: + p(a,b) :b [a_l c]: + int_0^l [[a_l b]_m c] dm."""
    out = {}
    ab = E.lambda_bracket(a, b)
    for n, A in enumerate(ab.coeffs):
        if A:
            out[n] = out.get(n, VAExpr()) + E.nprod(A, c)
            for m, B in enumerate(E.lambda_bracket(A, c).coeffs):
                if B:
                    out[n + m + 1] = out.get(n + m + 1, VAExpr()) + B * (ONE / (m + 1))
    s = _sgn(_par(E, a) * _par(E, b))
    for n, C in enumerate(E.lambda_bracket(a, c).coeffs):
        if C:
            out[n] = out.get(n, VAExpr()) + E.nprod(b, C) * s
    return LambdaPoly(out)


def check_wick(E, a, b, c):
    r = E.lambda_bracket(a, E.nprod(b, c)) - wick_rhs(E, a, b, c)
    return r or None


def _int_0_d(E, a, lp):
    """:(int_0^d dl a) [..]_l: = sum_n :(d^{n+1} a)/(n+1) C_n:"""
    out = VAExpr()
    for n, C in enumerate(lp.coeffs):
        if C:
            out = out + E.nprod(E.derive(a, n + 1), C) * (ONE / (n + 1))
    return out


def check_quasi_assoc(E, a, b, c):
    lhs = E.nprod(E.nprod(a, b), c) - E.nprod(a, E.nprod(b, c))
    rhs = _int_0_d(E, a, E.lambda_bracket(b, c))
    rhs = rhs + _int_0_d(E, b, E.lambda_bracket(a, c)) * _sgn(_par(E, a) * _par(E, b))
    r = lhs - rhs
    return r or None


def check_quasi_comm(E, a, b):
    lhs = E.nprod(a, b) - E.nprod(b, a) * _sgn(_par(E, a) * _par(E, b))
    rhs = VAExpr()
    for n, C in enumerate(E.lambda_bracket(a, b).coeffs):
        if C:
            rhs = rhs + E.derive(C, n + 1) * (Q(_sgn(n)) / (n + 1))
    r = lhs - rhs
    return r or None


def check_idempotent(E, a):
    r = E.renormalize(a) - a
    return r or None


def check_weights(E, a, b, grading):
    """Coefficient of l^n in [a_l b] has weight w_a + w_b - n - 1."""
    wa, wb = expr_weights(a, grading), expr_weights(b, grading)
    if len(wa) != 1 or len(wb) != 1:
        return None
    tot = wa.pop() + wb.pop()
    for n, C in enumerate(E.lambda_bracket(a, b).coeffs):
        ws = expr_weights(C, grading)
        if ws and ws != {tot - n - 1}:
            return C
    return None


# ---------------------------------------------------------------------------
# suites

class PropertyFailure(AssertionError):
    def __init__(self, name, inputs, residual):
        super().__init__(f"{name} fails")
        self.name = name
        self.inputs = inputs
        self.residual = residual


def generator_exprs(E):
    return [E.gen(g) for g in generators(E)]


def run_suite(E, seed=0, count=100, grading=None, jacobi_all=True):
    """Run every property on generator combinations and ``count`` seeded
    random composites.  Returns a dict name -> number of cases checked;
    raises PropertyFailure on the first failure."""
    counts = {}

    def run(name, fn, *args):
        r = fn(*args)
        counts[name] = counts.get(name, 0) + 1
        if r is not None:
            raise PropertyFailure(name, args[1:], r)

    gens = generator_exprs(E)
    for a in gens:
        for b in gens:
            run("skew", check_skew, E, a, b)
            run("sesqui", check_sesqui, E, a, b)
            run("quasi-comm", check_quasi_comm, E, a, b)
            if grading is not None:
                run("weights", check_weights, E, a, b, grading)
    if jacobi_all:
        for a in gens:
            for b in gens:
                for c in gens:
                    run("jacobi", check_jacobi, E, a, b, c)
    rng = random.Random(seed)
    for a, b in random_pairs(E, seed, count):
        run("idempotent", check_idempotent, E, a)
        run("skew", check_skew, E, a, b)
        run("sesqui", check_sesqui, E, a, b)
        run("quasi-comm", check_quasi_comm, E, a, b)
        if grading is not None:
            run("weights", check_weights, E, a, b, grading)
        c = random_expr(E, rng, 1)
        g = rng.choice(gens)
        run("jacobi", check_jacobi, E, g, a, c)
        run("wick", check_wick, E, g, a, c)
        run("wick", check_wick, E, a, c, g)
        run("quasi-assoc", check_quasi_assoc, E, a, c, g)
        run("quasi-assoc", check_quasi_assoc, E, g, a, c)
    return counts
