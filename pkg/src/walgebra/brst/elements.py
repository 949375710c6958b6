"""Named elements of the complex: d, J^(v), J^{a}, J^{v}, J^{f}, L and the
exactness witnesses."""

from __future__ import annotations

from dataclasses import dataclass

from ..exact_arith import K, ONE, Q, scalar
from ..conformal.expr import CURRENT, NEUTRAL, PHI, PHI_UP, VAExpr
from .datum import Datum


class NotInCentralizer(ValueError):
    pass


class CriticalStructure(ValueError):
    pass


@dataclass(frozen=True)
class NamedElement:
    tag: str
    value: VAExpr


def _sgn(p):
    return -1 if p & 1 else 1


def _sum(exprs):
    out = VAExpr()
    for e in exprs:
        out = out + e
    return out


def build_d(D: Datum) -> VAExpr:
    E = D.engine
    gr = D.grading
    f = D.alg.f
    out = VAExpr()
    for i in gr.S_pos:
        ui = D.e(i)
        out = out + E.nprod(D.current(ui), D.phi_up(i)) * _sgn(D.p(i))
        c = D.form(f, ui)
        if c:
            out = out + D.phi_up(i) * c
    for i in gr.S_half:
        out = out + E.nprod(D.phi_up(i), D.Phi(D.e(i)))
    for i in gr.S_pos:
        for j in gr.S_pos:
            ph = D.phi(D.br(D.e(j), D.e(i)))
            if not ph:
                continue
            term = E.nprod_many(D.phi_up(i), D.phi_up(j), ph)
            out = out + term * (Q(_sgn(D.p(i))) / 2)
    return out


def J_current(D: Datum, v) -> VAExpr:
    """J^(v) = v + sum_{j>0} (-1)^{p(v)+p(j)} :phi_{[v,u_j]} phi^j: for homogeneous v.

    The extra (-1)^{p(v)} is what makes d_(0) J^(v) agree with the closed
    four-sum formula when v is odd; for even v it is invisible.
    """
    par = D.alg.parity
    if len({par[i] for i, c in enumerate(v) if c}) > 1:
        return sum((J_current(D, tuple(c if par[i] == q else 0 * c for i, c in enumerate(v)))
                    for q in (0, 1)), VAExpr())
    E = D.engine
    pv = D.alg.parity_of(v)
    out = D.current(v)
    for j in D.grading.S_pos:
        ph = D.phi(D.br(v, D.e(j)))
        if ph:
            out = out + E.nprod(ph, D.phi_up(j)) * _sgn(pv + D.p(j))
    return out


def _homog_parity(D, v):
    return D.alg.parity_of(v)


def _require_centralizer(D, v, degree):
    if any(D.br(D.alg.f, v)):
        raise NotInCentralizer("element does not commute with f")
    if any(c for i, c in enumerate(v) if c and D.m(i) != degree):
        raise NotInCentralizer(f"element is not of degree {degree}")


def J_hat0(D: Datum, a) -> VAExpr:
    """J^{a} for a in g^f_0."""
    _require_centralizer(D, a, 0)
    E = D.engine
    pa = _homog_parity(D, a)
    out = J_current(D, a)
    acc = VAExpr()
    for j in D.grading.S_half:
        acc = acc + E.nprod(D.Phi_up(j), D.Phi(D.br(D.e(j), a)))
    return out + acc * (Q(_sgn(pa)) / 2)


def J_half(D: Datum, v) -> VAExpr:
    """J^{v} for v in g^f_{-1/2}."""
    _require_centralizer(D, v, Q("-1/2"))
    E = D.engine
    pv = _homog_parity(D, v)
    S12 = D.grading.S_half
    out = J_current(D, v)
    cubic = VAExpr()
    for i in S12:
        for j in S12:
            w = D.br(D.e(j), D.br(D.e(i), v))
            ph = D.Phi(w)
            if ph:
                cubic = cubic + E.nprod_many(D.Phi_up(i), D.Phi_up(j), ph)
    out = out - cubic * (Q(_sgn(pv)) / 3)
    for i in S12:
        ui = D.e(i)
        out = out + E.nprod(J_current(D, D.br(v, ui)), D.Phi_up(i))
        c = K * D.form(v, ui) + D.kappa(v, ui, "pos")
        if c:
            out = out - D.Phi_up(i, 1) * c
    return out


def sugawara_sum(D: Datum, indices, use_J=True) -> VAExpr:
    """sum_j :J^(u^j) J^(u_j): (or :u^j u_j: when use_J is False)."""
    E = D.engine
    out = VAExpr()
    for j in indices:
        if use_J:
            a, b = J_current(D, D.dual(j)), J_current(D, D.e(j))
        else:
            a, b = D.current(D.dual(j)), D.current(D.e(j))
        out = out + E.nprod(a, b)
    return out


def J_f(D: Datum, mode=None) -> VAExpr:
    """The d_(0)-closed element J^{f}; in gl(n|n) mode h^vee = 0 and the
    correction -:I^2:/2k is added."""
    mode = mode or ("gl_nn" if D.gl_mode else "standard")
    E = D.engine
    gr = D.grading
    if mode == "standard" and D.gl_mode:
        raise CriticalStructure("the Casimir is not scalar; use gl_nn mode")
    ks = K + (Q(0) if mode == "gl_nn" else D.hvee)
    f = D.alg.f
    out = J_current(D, f)
    for j in gr.S_half:
        out = out + E.nprod(D.Phi_up(j), J_current(D, D.br(f, D.e(j)))) * _sgn(D.p(j))
    out = out - sugawara_sum(D, gr.S_zero) * Q("1/2")
    out = out - E.derive(J_current(D, D.alg.x)) * ks
    out = out + E.derive(J_current(D, D.rho.rho_pos))
    acc = VAExpr()
    for j in gr.S_half:
        acc = acc + E.nprod(D.Phi_up(j), D.Phi(D.e(j), 1))
    out = out + acc * (ks / 2)
    if mode == "gl_nn":
        I = D.alg.identity
        if I is None:
            raise CriticalStructure("gl_nn mode needs the identity element")
        ci = D.current(I)
        out = out - E.nprod(ci, ci) * (scalar(1) / (2 * K))
    return out


@dataclass(frozen=True)
class LParts:
    L: VAExpr
    Lg: VAExpr
    dx: VAExpr
    Lch: VAExpr
    Lne: VAExpr


def L_total(D: Datum, mode=None) -> LParts:
    mode = mode or ("gl_nn" if D.gl_mode else "standard")
    E = D.engine
    gr = D.grading
    cas = sugawara_sum(D, gr.S, use_J=False)
    if mode == "gl_nn":
        I = D.alg.identity
        if I is None:
            raise CriticalStructure("gl_nn mode needs the identity element")
        ci = D.current(I)
        Lg = cas * (ONE / (2 * K)) + E.nprod(ci, ci) * (ONE / (2 * K * K))
    else:
        Lg = cas * (ONE / (2 * (K + D.hvee)))
    dx = E.derive(D.current(D.alg.x))
    Lch = VAExpr()
    for j in gr.S_pos:
        mj = D.m(j)
        pj = E.gen((PHI, j))
        pu = E.gen((PHI_UP, j))
        if 1 - mj:
            Lch = Lch + E.nprod(E.derive(pu), pj) * (1 - mj)
        Lch = Lch - E.nprod(pu, E.derive(pj)) * mj
    Lne = VAExpr()
    for j in gr.S_half:
        Lne = Lne + E.nprod(D.Phi_up(j, 1), D.Phi(D.e(j)))
    Lne = Lne * Q("1/2")
    return LParts(Lg + dx + Lch + Lne, Lg, dx, Lch, Lne)


def witness(D: Datum):
    """(W1, W2) with (k+h^vee)L + J^{f} = d(W1) + d(W2)/2."""
    E = D.engine
    gr = D.grading
    W1 = VAExpr()
    for i in gr.S_pos:
        W1 = W1 + E.nprod(D.phi(D.e(i)), D.current(D.dual(i))) * _sgn(D.p(i))
    W2 = VAExpr()
    for i in gr.S_pos:
        for j in gr.S_pos:
            ph = D.phi(D.br(D.e(i), D.dual(j)))
            if ph:
                W2 = W2 + E.nprod_many(ph, D.phi(D.e(j)), E.gen((PHI_UP, i))) * _sgn(D.p(j))
    return W1, W2
