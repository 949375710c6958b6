"""Exact scalars: rationals, polynomials in the level ``k``, rational functions in ``k``.

Rationals are ``gmpy2.mpq``.  ``PolyK`` and ``RatFunK`` are immutable and always
kept in normal form, so equality of values is equality of representations.
"""

from __future__ import annotations

import re
from fractions import Fraction

from gmpy2 import mpq

Rational = type(mpq(0))

_ZERO = mpq(0)
_ONE = mpq(1)


class DivisionByZero(ZeroDivisionError):
    pass


class PoleAtPoint(ArithmeticError):
    pass


def Q(value) -> Rational:
    """Coerce int / str / Fraction / mpq to an exact rational."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, (PolyK, RatFunK)):
        raise TypeError(f"not a constant: {value}")
    raise TypeError(f"cannot convert {value!r} to a rational")


def parse_rational(text: str) -> Rational:
    text = text.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", text):
        raise ValueError(f"malformed rational: {text!r}")
    if "/" in text:
        p, q = text.split("/")
        if int(q) == 0:
            raise DivisionByZero(text)
        return mpq(int(p), int(q))
    return mpq(int(text))


def format_rational(r) -> str:
    r = Q(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


# ---------------------------------------------------------------------------
# coefficient tuples (low degree first, no trailing zeros)

def _strip(c):
    n = len(c)
    while n and not c[n - 1]:
        n -= 1
    return c if n == len(c) else c[:n]


def _padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, y in enumerate(b):
        out[i] += y
    return _strip(tuple(out))


def _psub(a, b):
    n = max(len(a), len(b))
    out = [_ZERO] * n
    for i, y in enumerate(a):
        out[i] = y
    for i, y in enumerate(b):
        out[i] -= y
    return _strip(tuple(out))


def _pmul(a, b):
    if not a or not b:
        return ()
    if len(a) == 1:
        s = a[0]
        return tuple(s * y for y in b)
    if len(b) == 1:
        s = b[0]
        return tuple(x * s for x in a)
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _strip(tuple(out))


def _pscale(a, s):
    if not s:
        return ()
    return tuple(x * s for x in a)


def _pdivmod(a, b):
    if not b:
        raise DivisionByZero("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(a) - 1 < db:
        return (), a
    quo = [_ZERO] * (len(a) - db)
    for i in range(len(a) - 1 - db, -1, -1):
        c = rem[i + db] / lead
        quo[i] = c
        if c:
            for j, y in enumerate(b):
                rem[i + j] -= c * y
    return _strip(tuple(quo)), _strip(tuple(rem[:db]))


def _monic(a):
    if not a:
        return a
    lead = a[-1]
    if lead == 1:
        return a
    return tuple(x / lead for x in a)


def _pgcd(a, b):
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    return _monic(a)


def _peval(a, x):
    acc = _ZERO
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _pderiv(a):
    return _strip(tuple(i * a[i] for i in range(1, len(a))))


_POLY_TERM = re.compile(
    r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*(\*?\s*k(?:\s*\^\s*(\d+))?)?\s*"
)


def _parse_poly_coeffs(text: str):
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    coeffs = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _POLY_TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"malformed polynomial {text!r} at {pos}")
        sign, num, kpart, power = m.groups()
        if sign is None and not first:
            raise ValueError(f"missing operator in {text!r}")
        if num is None and kpart is None:
            raise ValueError(f"malformed polynomial {text!r}")
        if kpart is not None and kpart.lstrip().startswith("*") and num is None:
            raise ValueError(f"dangling '*' in {text!r}")
        c = parse_rational(num) if num is not None else _ONE
        if sign == "-":
            c = -c
        deg = 0 if kpart is None else (int(power) if power is not None else 1)
        coeffs[deg] = coeffs.get(deg, _ZERO) + c
        pos = m.end()
        first = False
    n = max(coeffs) + 1
    return _strip(tuple(coeffs.get(i, _ZERO) for i in range(n)))


def _format_poly_coeffs(c) -> str:
    if not c:
        return "0"
    parts = []
    for deg in range(len(c) - 1, -1, -1):
        x = c[deg]
        if not x:
            continue
        neg = x < 0
        a = -x if neg else x
        if deg == 0:
            body = format_rational(a)
        else:
            mono = "k" if deg == 1 else f"k^{deg}"
            body = mono if a == 1 else f"{format_rational(a)}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


class PolyK:
    """Polynomial in ``k`` with rational coefficients."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        self.c = _strip(tuple(Q(x) for x in coeffs))

    @classmethod
    def _raw(cls, c):
        p = object.__new__(cls)
        p.c = c
        return p

    @classmethod
    def parse(cls, text: str) -> "PolyK":
        return cls._raw(_parse_poly_coeffs(text))

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def __eq__(self, other):
        if isinstance(other, PolyK):
            return self.c == other.c
        if isinstance(other, (int, Rational, Fraction)):
            return self.c == _strip((Q(other),))
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return PolyK._raw(_padd(self.c, other.c))

    __radd__ = __add__

    def __neg__(self):
        return PolyK._raw(tuple(-x for x in self.c))

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return PolyK._raw(_psub(self.c, other.c))

    def __rsub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return PolyK._raw(_psub(other.c, self.c))

    def __mul__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return PolyK._raw(_pmul(self.c, other.c))

    __rmul__ = __mul__

    def __divmod__(self, other):
        q, r = _pdivmod(self.c, _as_poly(other).c)
        return PolyK._raw(q), PolyK._raw(r)

    def gcd(self, other) -> "PolyK":
        return PolyK._raw(_pgcd(self.c, other.c))

    def __call__(self, k0):
        return _peval(self.c, Q(k0))

    def derivative(self) -> "PolyK":
        return PolyK._raw(_pderiv(self.c))

    def __str__(self):
        return _format_poly_coeffs(self.c)

    def __repr__(self):
        return f"PolyK({str(self)!r})"


def _as_poly(x):
    if isinstance(x, PolyK):
        return x
    if isinstance(x, (int, Rational, Fraction)):
        return PolyK._raw(_strip((Q(x),)))
    return None


_ONE_T = (_ONE,)


class RatFunK:
    """Normalized rational function num/den in ``k``: gcd 1, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=1):
        n = _as_poly(num) if not isinstance(num, PolyK) else num
        d = _as_poly(den) if not isinstance(den, PolyK) else den
        if n is None or d is None:
            raise TypeError("RatFunK expects polynomials or rationals")
        self.num, self.den = _normalize(n.c, d.c)

    @classmethod
    def _raw(cls, num, den=_ONE_T):
        r = object.__new__(cls)
        r.num = num
        r.den = den
        return r

    @classmethod
    def parse(cls, text: str) -> "RatFunK":
        s = text.strip()
        m = re.fullmatch(r"\((.*)\)\s*/\s*\((.*)\)", s)
        if m:
            return cls(PolyK.parse(m.group(1)), PolyK.parse(m.group(2)))
        m = re.fullmatch(r"(.*?)\s*/\s*\((.*)\)", s)
        if m and m.group(1):
            return cls(PolyK.parse(m.group(1).strip("()")), PolyK.parse(m.group(2)))
        return cls._raw(_parse_poly_coeffs(s))

    # -- predicates ----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return self.den == _ONE_T

    def is_constant(self) -> bool:
        return self.den == _ONE_T and len(self.num) <= 1

    def constant(self) -> Rational:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num[0] if self.num else _ZERO

    def is_negative(self) -> bool:
        """Sign of the leading numerator coefficient."""
        return bool(self.num) and self.num[-1] < 0

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self.den is o.den or self.den == o.den:
            if self.den == _ONE_T:
                return RatFunK._raw(_padd(self.num, o.num))
            n, d = _normalize(_padd(self.num, o.num), self.den)
            return RatFunK._raw(n, d)
        n = _padd(_pmul(self.num, o.den), _pmul(o.num, self.den))
        n, d = _normalize(n, _pmul(self.den, o.den))
        return RatFunK._raw(n, d)

    __radd__ = __add__

    def __neg__(self):
        return RatFunK._raw(tuple(-x for x in self.num), self.den)

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            if not other:
                return RatFunK._raw(())
            return RatFunK._raw(tuple(x * other for x in self.num), self.den)
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self.den == _ONE_T and o.den == _ONE_T:
            return RatFunK._raw(_pmul(self.num, o.num))
        n, d = _normalize(_pmul(self.num, o.num), _pmul(self.den, o.den))
        return RatFunK._raw(n, d)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunK":
        if not self.num:
            raise DivisionByZero("inverse of zero")
        n, d = _normalize(self.den, self.num)
        return RatFunK._raw(n, d)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = RatFunK._raw(_ONE_T)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __call__(self, k0):
        return ratfun_eval(self, k0)

    def __str__(self):
        if self.den == _ONE_T:
            return _format_poly_coeffs(self.num)
        n = _format_poly_coeffs(self.num)
        if len(self.num) > 1:
            n = f"({n})"
        return f"{n}/({_format_poly_coeffs(self.den)})"

    def __repr__(self):
        return f"RatFunK({str(self)!r})"


def _normalize(n, d):
    if not d:
        raise DivisionByZero("zero denominator")
    if not n:
        return (), _ONE_T
    if len(d) > 1:
        g = _pgcd(n, d)
        if len(g) > 1:
            n, _ = _pdivmod(n, g)
            d, _ = _pdivmod(d, g)
    lead = d[-1]
    if lead != 1:
        n = tuple(x / lead for x in n)
        d = tuple(x / lead for x in d)
    return n, d


def _coerce(x):
    if isinstance(x, RatFunK):
        return x
    if isinstance(x, (int, Rational, Fraction)):
        return RatFunK._raw(_strip((Q(x),)))
    if isinstance(x, PolyK):
        return RatFunK._raw(x.c)
    return None


def scalar(x) -> RatFunK:
    """Coerce int/rational/str/PolyK/RatFunK to a RatFunK."""
    if isinstance(x, str):
        return RatFunK.parse(x)
    r = _coerce(x)
    if r is None:
        raise TypeError(f"cannot convert {x!r} to a scalar")
    return r


K = RatFunK._raw((_ZERO, _ONE))
ZERO = RatFunK._raw(())
ONE = RatFunK._raw(_ONE_T)


def ratfun_arith(op: str, a, b=None) -> RatFunK:
    a = scalar(a)
    if op == "neg":
        return -a
    b = scalar(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return a / b
    raise ValueError(f"unknown op {op!r}")


def ratfun_normalize(num: PolyK, den: PolyK) -> RatFunK:
    return RatFunK(num, den)


def ratfun_eval(a, k0) -> Rational:
    a = scalar(a)
    k0 = Q(k0)
    dv = _peval(a.den, k0)
    if not dv:
        raise PoleAtPoint(f"{a} has a pole at k = {format_rational(k0)}")
    return _peval(a.num, k0) / dv


__all__ = [
    "Rational", "Q", "PolyK", "RatFunK", "K", "ZERO", "ONE",
    "DivisionByZero", "PoleAtPoint", "scalar",
    "parse_rational", "format_rational",
    "ratfun_arith", "ratfun_normalize", "ratfun_eval",
]
