"""Universal enveloping vertex algebra of a Lie conformal superalgebra.

The algebra is specified by parities of the generators and by their
lambda-brackets, which must be linear: each coefficient of lambda^p is a
combination of generators and the vacuum.  All results are returned in PBW
normal form (see :mod:`.expr`).  Every operation on monomials is memoized.

Rewriting rules used:

* quasi-commutativity for moving one factor into a word,
  :a:bC:: = p(a,b) :b:aC:: + :(int_{-d}^0 [a_l b] dl) C:
* quasi-associativity for a composite left factor,
  ::aA:B: = :a:AB:: + :(int_0^d a)[A_l B]: + p(a,A) :(int_0^d A)[a_l B]:
* the non-commutative Wick formula for the bracket with a composite right side,
  and skewsymmetry for a composite left side.
"""

from __future__ import annotations

from math import comb

from gmpy2 import mpq

from ..exact_arith import ONE, ZERO, scalar
from .expr import (VACUUM, Generator, LambdaPoly, VAExpr, add_into, add_term,
                   fkey)

_INV = [None] + [mpq(1, n) for n in range(1, 64)]


def _inv(n):
    return _INV[n] if n < len(_INV) else mpq(1, n)


class ParityMismatch(ValueError):
    pass


class VertexAlgebra:
    """Engine bound to one generating set.

    ``parity``: dict Generator -> 0/1.
    ``gen_bracket(g, h)``: dict p -> list of (Generator or None, coeff) giving
    [g_lambda h] = sum_p lambda^p (sum coeff * generator), None meaning vacuum.
    ``namer(g)``: display name used by the renderers.
    """

    def __init__(self, parity, gen_bracket, namer=None, latex_namer=None):
        self.parity = dict(parity)
        self._gen_bracket_fn = gen_bracket
        self.namer = namer or (lambda g: f"g{g.kind}_{g.index}")
        self.latex_namer = latex_namer or self.namer
        self._gb = {}
        self._fb = {}
        self._contr = {}
        self._ins = {}
        self._der = {}
        self._np = {}
        self._br = {}

    def clear_cache(self):
        for c in (self._fb, self._contr, self._ins, self._der, self._np, self._br):
            c.clear()

    def cache_sizes(self):
        return {"insert": len(self._ins), "derive": len(self._der),
                "nprod": len(self._np), "bracket": len(self._br)}

    # ------------------------------------------------------------------
    # parities
    def fparity(self, f) -> int:
        return self.parity[(f[0], f[1])]

    def mparity(self, m) -> int:
        p = 0
        par = self.parity
        for f in m:
            p += par[(f[0], f[1])]
        return p & 1

    def expr_parity(self, e: VAExpr):
        ps = {self.mparity(m) for m in e.terms}
        if len(ps) > 1:
            raise ParityMismatch("expression is not parity-homogeneous")
        return ps.pop() if ps else None

    def _sign(self, pa, pb):
        return -ONE if pa & pb & 1 else ONE

    # ------------------------------------------------------------------
    # brackets of single factors
    def _gen_bracket(self, g, h):
        key = (g, h)
        r = self._gb.get(key)
        if r is None:
            raw = self._gen_bracket_fn(Generator(*g), Generator(*h))
            r = {}
            for p, terms in raw.items():
                lst = [(None if t is None else (t[0], t[1]), scalar(c)) for t, c in terms if c]
                if lst:
                    r[p] = lst
            self._gb[key] = r
        return r

    def _fbracket(self, a, b):
        """[d^m g _lambda d^n h] as dict p -> dict factor-monomial -> coeff."""
        key = (a, b)
        r = self._fb.get(key)
        if r is not None:
            return r
        base = self._gen_bracket((a[0], a[1]), (b[0], b[1]))
        m, n = a[2], b[2]
        r = {}
        sm = -ONE if m & 1 else ONE
        for p, terms in base.items():
            for rr in range(n + 1):
                power = m + p + n - rr
                c0 = sm * comb(n, rr)
                for t, c in terms:
                    if t is None:
                        if rr:
                            continue
                        mono = VACUUM
                    else:
                        mono = ((t[0], t[1], rr),)
                    add_term(r.setdefault(power, {}), mono, c * c0)
        r = {p: e for p, e in r.items() if e}
        self._fb[key] = r
        return r

    def _contraction(self, a, b):
        """int_{-d}^0 [a_lambda b] dlambda as a list of (factor, coeff)."""
        key = (a, b)
        r = self._contr.get(key)
        if r is not None:
            return r
        out = {}
        for p, e in self._fbracket(a, b).items():
            s = _inv(p + 1) if p % 2 == 0 else -_inv(p + 1)
            for mono, c in e.items():
                if not mono:
                    continue
                f = mono[0]
                add_term(out, (f[0], f[1], f[2] + p + 1), c * s)
        r = list(out.items())
        self._contr[key] = r
        return r

    # ------------------------------------------------------------------
    # normally ordered products
    def insert(self, a, m) -> dict:
        """:a m: for a factor a and a normal monomial m."""
        key = (a, m)
        r = self._ins.get(key)
        if r is not None:
            return r
        if not m:
            r = {(a,): ONE}
        else:
            b = m[0]
            ka, kb = fkey(a), fkey(b)
            if ka < kb or (ka == kb and not self.fparity(a)):
                r = {(a,) + m: ONE}
            elif ka == kb:
                r = {}
                half = mpq(1, 2)
                for fac, c in self._contraction(a, a):
                    add_into(r, self.insert(fac, m[1:]), c * half)
            else:
                r = {}
                rest = m[1:]
                s = self._sign(self.fparity(a), self.fparity(b))
                for x, c in self.insert(a, rest).items():
                    add_into(r, self.insert(b, x), c * s if s is not ONE else c)
                for fac, c in self._contraction(a, b):
                    add_into(r, self.insert(fac, rest), c)
        self._ins[key] = r
        return r

    def derive_mono(self, m) -> dict:
        r = self._der.get(m)
        if r is not None:
            return r
        if not m:
            r = {}
        else:
            a = m[0]
            rest = m[1:]
            r = dict(self.insert((a[0], a[1], a[2] + 1), rest))
            for x, c in self.derive_mono(rest).items():
                add_into(r, self.insert(a, x), c)
        self._der[m] = r
        return r

    def derive_mono_n(self, m, n) -> dict:
        cur = {m: ONE}
        for _ in range(n):
            nxt = {}
            for x, c in cur.items():
                add_into(nxt, self.derive_mono(x), c)
            cur = nxt
        return cur

    def nprod_mono(self, A, B) -> dict:
        if not A:
            return {B: ONE}
        if not B:
            return {A: ONE}
        if len(A) == 1:
            return self.insert(A[0], B)
        key = (A, B)
        r = self._np.get(key)
        if r is not None:
            return r
        a = A[0]
        A1 = A[1:]
        r = {}
        for x, c in self.nprod_mono(A1, B).items():
            add_into(r, self.insert(a, x), c)
        for p, Y in self.bracket_mono(A1, B).items():
            da = (a[0], a[1], a[2] + p + 1)
            s = _inv(p + 1)
            for x, c in Y.items():
                add_into(r, self.insert(da, x), c * s)
        sa = self._sign(self.fparity(a), self.mparity(A1))
        for p, Z in self.bracket_mono((a,), B).items():
            s = _inv(p + 1)
            dA1 = self.derive_mono_n(A1, p + 1)
            for m1, c1 in dA1.items():
                for x, c in Z.items():
                    add_into(r, self.nprod_mono(m1, x), c1 * c * sa * s)
        self._np[key] = r
        return r

    # ------------------------------------------------------------------
    # lambda-brackets of monomials; result dict p -> dict (ordinary powers)
    def bracket_mono(self, A, B) -> dict:
        if not A or not B:
            return {}
        key = (A, B)
        r = self._br.get(key)
        if r is not None:
            return r
        if len(B) == 1:
            if len(A) == 1:
                r = self._fbracket(A[0], B[0])
            else:
                r = self._skew_single(A, B[0])
        else:
            r = self._wick(A, B)
        self._br[key] = r
        return r

    def _skew_single(self, A, b):
        # [A_l b] = -p(A,b) [b_{-l-d} A]
        s = -self._sign(self.mparity(A), self.fparity(b))
        out = {}
        for q, Y in self.bracket_mono((b,), A).items():
            sq = s if q % 2 == 0 else -s
            for rr in range(q + 1):
                c0 = sq * comb(q, rr)
                tgt = out.setdefault(q - rr, {})
                for y, c in Y.items():
                    if rr == 0:
                        add_term(tgt, y, c * c0)
                    else:
                        add_into(tgt, self.derive_mono_n(y, rr), c * c0)
        return {p: e for p, e in out.items() if e}

    def _wick(self, A, B):
        b = B[0]
        B1 = B[1:]
        out = {}
        Ab = self.bracket_mono(A, (b,))
        for p, E in Ab.items():
            tgt = out.setdefault(p, {})
            for x, c in E.items():
                add_into(tgt, self.nprod_mono(x, B1), c)
        s = self._sign(self.mparity(A), self.fparity(b))
        for p, E in self.bracket_mono(A, B1).items():
            tgt = out.setdefault(p, {})
            for x, c in E.items():
                add_into(tgt, self.insert(b, x), c * s if s is not ONE else c)
        for p, E in Ab.items():
            for x, c in E.items():
                for q, W in self.bracket_mono(x, B1).items():
                    tgt = out.setdefault(p + q + 1, {})
                    add_into(tgt, W, c * _inv(q + 1))
        return {p: e for p, e in out.items() if e}

    # ------------------------------------------------------------------
    # public API on VAExpr
    def nprod(self, a: VAExpr, b: VAExpr) -> VAExpr:
        out = {}
        for ma, ca in a.terms.items():
            for mb, cb in b.terms.items():
                add_into(out, self.nprod_mono(ma, mb), ca * cb)
        return VAExpr._wrap(out)

    def nprod_many(self, *args: VAExpr) -> VAExpr:
        """Right-nested :a1 :a2 ( ... an):: ."""
        if not args:
            return VAExpr.vacuum()
        acc = args[-1]
        for e in reversed(args[:-1]):
            acc = self.nprod(e, acc)
        return acc

    def derive(self, a: VAExpr, n: int = 1) -> VAExpr:
        out = {}
        for m, c in a.terms.items():
            add_into(out, self.derive_mono_n(m, n), c)
        return VAExpr._wrap(out)

    def bracket_dict(self, a: VAExpr, b: VAExpr) -> dict:
        out = {}
        for ma, ca in a.terms.items():
            for mb, cb in b.terms.items():
                s = ca * cb
                for p, e in self.bracket_mono(ma, mb).items():
                    add_into(out.setdefault(p, {}), e, s)
        return out

    def lambda_bracket(self, a: VAExpr, b: VAExpr) -> LambdaPoly:
        return LambdaPoly({p: VAExpr._wrap(e) for p, e in self.bracket_dict(a, b).items()})

    def nth_product(self, a: VAExpr, b: VAExpr, n: int) -> VAExpr:
        return self.lambda_bracket(a, b).product(n)

    def from_word(self, factors, c=ONE) -> VAExpr:
        """Normal form of the right-nested product of the given factors."""
        cur = {VACUUM: scalar(c)}
        for f in reversed(tuple(factors)):
            nxt = {}
            for x, cc in cur.items():
                add_into(nxt, self.insert(f, x), cc)
            cur = nxt
        return VAExpr._wrap(cur)

    def gen(self, g, n=0, c=ONE) -> VAExpr:
        return VAExpr({((g[0], g[1], n),): scalar(c)})

    def substitute(self, a: VAExpr, images: dict) -> VAExpr:
        """Extend generator images to a differential-algebra map on words."""
        imgs = {}
        for g, e in images.items():
            g = (g[0], g[1])
            p = self.expr_parity(e) if isinstance(e, VAExpr) else None
            if p is not None and p != self.parity[g]:
                raise ParityMismatch(f"image of {self.namer(Generator(*g))} has the wrong parity")
            imgs[g] = e
        dcache = {}

        def image(f):
            r = dcache.get(f)
            if r is None:
                g = (f[0], f[1])
                base = imgs.get(g)
                if base is None:
                    r = VAExpr({(f,): ONE})
                else:
                    r = self.derive(base, f[2]) if f[2] else base
                dcache[f] = r
            return r

        out = VAExpr()
        for m, c in a.terms.items():
            acc = VAExpr.vacuum(c)
            for f in reversed(m):
                acc = self.nprod(image(f), acc)
                if not acc:
                    break
            out = out + acc
        return out

    # ------------------------------------------------------------------
    # raw expression trees
    def normal_form(self, tree) -> VAExpr:
        """Reduce a tree built from VAExpr leaves and tuples
        ('sum', t1, ...), ('scale', c, t), ('d', t), ('nprod', t1, t2),
        ('gen', g, n), ('vac',)."""
        if isinstance(tree, VAExpr):
            return self.renormalize(tree)
        op = tree[0]
        if op == "sum":
            out = VAExpr()
            for t in tree[1:]:
                out = out + self.normal_form(t)
            return out
        if op == "scale":
            return self.normal_form(tree[2]) * tree[1]
        if op == "d":
            return self.derive(self.normal_form(tree[1]))
        if op == "nprod":
            return self.nprod(self.normal_form(tree[1]), self.normal_form(tree[2]))
        if op == "gen":
            return self.gen(tree[1], tree[2] if len(tree) > 2 else 0)
        if op == "vac":
            return VAExpr.vacuum()
        raise ValueError(f"unknown node {op!r}")

    def renormalize(self, e: VAExpr) -> VAExpr:
        """Normal form of an expression whose words may be unsorted."""
        out = {}
        for m, c in e.terms.items():
            add_into(out, self.from_word(m).terms, c)
        return VAExpr._wrap(out)
