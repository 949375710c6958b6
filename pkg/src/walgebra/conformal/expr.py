"""Generators, monomials, expressions and lambda-polynomials.

A factor is a tuple ``(kind, index, n)`` standing for the n-th derivative of a
generator.  A monomial is a tuple of factors read as the right-nested
normally ordered product; the empty tuple is the vacuum.  Factors inside a
monomial are sorted by ``(kind, index, -n)``.
"""

from __future__ import annotations

from math import factorial
from typing import NamedTuple

from ..exact_arith import ONE, ZERO, RatFunK, scalar

CURRENT, PHI, PHI_UP, NEUTRAL = 0, 1, 2, 3
KIND_NAMES = {CURRENT: "Current", PHI: "PhiLower", PHI_UP: "PhiUpper", NEUTRAL: "NeutralPhi"}


class Generator(NamedTuple):
    kind: int
    index: int

    def factor(self, n=0):
        return (self.kind, self.index, n)


def fkey(f):
    return (f[0], f[1], -f[2])


def gen_of(f) -> Generator:
    return Generator(f[0], f[1])


VACUUM = ()


def add_into(target: dict, src: dict, scale=ONE):
    """target += scale * src, dropping zeros."""
    if scale is ONE:
        for m, c in src.items():
            v = target.get(m)
            if v is None:
                target[m] = c
            else:
                v = v + c
                if v:
                    target[m] = v
                else:
                    del target[m]
        return target
    for m, c in src.items():
        c = c * scale
        v = target.get(m)
        if v is None:
            if c:
                target[m] = c
        else:
            v = v + c
            if v:
                target[m] = v
            else:
                del target[m]
    return target


def add_term(target: dict, m, c):
    v = target.get(m)
    if v is None:
        if c:
            target[m] = c
    else:
        v = v + c
        if v:
            target[m] = v
        else:
            del target[m]


class VAExpr:
    """Finite map monomial -> scalar, with no zero coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {} if terms is None else {m: c for m, c in terms.items() if c}

    @classmethod
    def _wrap(cls, terms):
        e = object.__new__(cls)
        e.terms = terms
        return e

    @classmethod
    def vacuum(cls, c=ONE):
        return cls({VACUUM: scalar(c)})

    @classmethod
    def gen(cls, kind, index, n=0, c=ONE):
        return cls({((kind, index, n),): scalar(c)})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, VAExpr):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def __add__(self, other):
        if not isinstance(other, VAExpr):
            return NotImplemented
        return VAExpr._wrap(add_into(dict(self.terms), other.terms))

    def __sub__(self, other):
        if not isinstance(other, VAExpr):
            return NotImplemented
        return VAExpr._wrap(add_into(dict(self.terms), other.terms, -ONE))

    def __neg__(self):
        return VAExpr._wrap({m: -c for m, c in self.terms.items()})

    def __mul__(self, s):
        s = scalar(s)
        if not s:
            return VAExpr()
        return VAExpr._wrap({m: c * s for m, c in self.terms.items()})

    __rmul__ = __mul__

    def coeff(self, m):
        return self.terms.get(m, ZERO)

    def monomials(self):
        return sorted(self.terms, key=mono_sort_key)

    def __iter__(self):
        for m in self.monomials():
            yield m, self.terms[m]

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        from .render import render_text
        return f"VAExpr({render_text(self)!r})"


def mono_sort_key(m):
    return (len(m), tuple(fkey(f) for f in m))


class LambdaPoly:
    """Polynomial in lambda with VAExpr coefficients.

    ``coeffs[n]`` is the coefficient of the ordinary power lambda^n; the
    n-th product is ``n! * coeffs[n]`` (see :meth:`product`).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        coeffs = dict(coeffs or {})
        top = max((p for p, e in coeffs.items() if e), default=-1)
        self.coeffs = [coeffs.get(p, VAExpr()) for p in range(top + 1)]

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coeff(self, n) -> VAExpr:
        return self.coeffs[n] if 0 <= n < len(self.coeffs) else VAExpr()

    def product(self, n) -> VAExpr:
        """a_(n) b, the coefficient of lambda^n / n!."""
        return self.coeff(n) * factorial(n)

    @property
    def products(self):
        return [self.product(n) for n in range(len(self.coeffs))]

    def __eq__(self, other):
        if isinstance(other, LambdaPoly):
            return self.coeffs == other.coeffs
        if other == 0:
            return not self.coeffs
        return NotImplemented

    __hash__ = None

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return LambdaPoly({p: self.coeff(p) + other.coeff(p) for p in range(n)})

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return LambdaPoly({p: self.coeff(p) - other.coeff(p) for p in range(n)})

    def __neg__(self):
        return LambdaPoly({p: -e for p, e in enumerate(self.coeffs)})

    def __mul__(self, s):
        return LambdaPoly({p: e * s for p, e in enumerate(self.coeffs)})

    __rmul__ = __mul__

    def __repr__(self):
        from .render import render_lambda
        return f"LambdaPoly({render_lambda(self)!r})"


def as_scalar(c) -> RatFunK:
    return scalar(c)
