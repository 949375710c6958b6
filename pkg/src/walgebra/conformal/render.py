"""Text and LaTeX rendering of expressions and lambda-polynomials."""

from __future__ import annotations

from ..exact_arith import ONE, RatFunK, _format_poly_coeffs
from .expr import LambdaPoly, VAExpr, mono_sort_key

# set by Datum/engine constructors: maps (kind, index) -> display strings
_default_text = lambda g: f"g{g[0]}_{g[1]}"


def _factor_text(f, namer):
    name = namer((f[0], f[1]))
    if f[2] == 0:
        return name
    if f[2] == 1:
        return f"∂{name}"
    return f"∂^{f[2]}{name}"


def _factor_latex(f, namer):
    name = namer((f[0], f[1]))
    if f[2] == 0:
        return name
    if f[2] == 1:
        return rf"\partial {name}"
    return rf"\partial^{{{f[2]}}} {name}"


def mono_text(m, namer=_default_text):
    if not m:
        return "1"
    parts = [_factor_text(f, namer) for f in m]
    return parts[0] if len(parts) == 1 else ":" + " ".join(parts) + ":"


def mono_latex(m, namer=_default_text):
    if not m:
        return "1"
    parts = [_factor_latex(f, namer) for f in m]
    return parts[0] if len(parts) == 1 else ":" + r"\,".join(parts) + ":"


def _coeff_text(c: RatFunK):
    """(sign, string) with the string empty for a unit coefficient."""
    neg = c.is_negative()
    a = -c if neg else c
    if a == ONE:
        return neg, ""
    s = str(a)
    if a.is_constant() or (a.is_polynomial() and len(a.num) == 2 and not a.num[0]):
        return neg, s
    return neg, f"({s})"


def _join(items):
    out = ""
    for i, (neg, body) in enumerate(items):
        if i == 0:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out


def render_text(e: VAExpr, namer=None) -> str:
    namer = namer or _default_text
    if not e.terms:
        return "0"
    mons = sorted(e.terms, key=mono_sort_key)
    lead_neg = e.terms[mons[0]].is_negative()
    items = []
    for m in mons:
        c = e.terms[m]
        if lead_neg:
            c = -c
        neg, cs = _coeff_text(c)
        body = mono_text(m, namer)
        if cs and m:
            body = cs + body if body.startswith(":") or cs.endswith(")") else f"{cs} {body}"
        elif cs:
            body = cs
        items.append((neg, body))
    s = _join(items)
    if lead_neg:
        return f"-({s})" if len(items) > 1 else "-" + s
    return s


def _latex_poly(c):
    s = _format_poly_coeffs(c)
    return s.replace("*", "").replace("k^", "k^")


def _coeff_latex(c: RatFunK):
    neg = c.is_negative()
    a = -c if neg else c
    if a == ONE:
        return neg, ""
    if a.is_polynomial():
        s = _latex_poly(a.num)
        if "/" in s and a.is_constant():
            p, q = s.split("/")
            return neg, rf"\frac{{{p}}}{{{q}}}"
        if len(a.num) > 1 and sum(1 for x in a.num if x) > 1:
            return neg, f"({s})"
        return neg, s
    return neg, rf"\frac{{{_latex_poly(a.num)}}}{{{_latex_poly(a.den)}}}"


def render_latex(e: VAExpr, namer=None) -> str:
    namer = namer or _default_text
    if not e.terms:
        return "0"
    items = []
    for m in sorted(e.terms, key=mono_sort_key):
        neg, cs = _coeff_latex(e.terms[m])
        body = mono_latex(m, namer)
        if cs:
            body = cs if not m else rf"{cs}\,{body}"
        items.append((neg, body))
    return _join(items)


def render_lambda(p: LambdaPoly, namer=None, latex=False) -> str:
    if not p.coeffs:
        return "0"
    parts = []
    for n, e in enumerate(p.coeffs):
        if not e:
            continue
        body = render_latex(e, namer) if latex else render_text(e, namer)
        lam = r"\lambda" if latex else "λ"
        if n == 0:
            parts.append(f"({body})" if len(e) > 1 else body)
        else:
            pw = lam if n == 1 else f"{lam}^{n}" if not latex else f"{lam}^{{{n}}}"
            parts.append(f"{pw}({body})" if len(e) > 1 or body.startswith("-") else f"{pw}·{body}" if not latex else f"{pw}\\,{body}")
    return " + ".join(parts)
