"""Verification reports and their text / JSON / LaTeX emitters.

A report is deterministic given the datum and the claim set: claims are
sorted by id, residuals are rendered with terms grouped by conformal
weight, and wall times are left out unless asked for.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .exact_arith import RatFunK, format_rational
from .conformal.expr import LambdaPoly, VAExpr
from .conformal.properties import conformal_weight
from .conformal.render import render_lambda, render_latex, render_text

SCHEMA = "walgebra-report/1"
ENGINE_VERSION = "0.1.0"


@dataclass
class ClaimRecord:
    claim: str
    status: str                      # verified | failed | skipped
    residual: Optional[str] = None
    detail: str = ""
    wall_time: Optional[float] = None

    def as_dict(self, with_detail=False):
        d = {"claim": self.claim, "status": self.status, "residual": self.residual,
             "wall_time": self.wall_time}
        if with_detail:
            d["detail"] = self.detail
        return d


@dataclass
class Report:
    datum: str
    claims: list = field(default_factory=list)
    root_system: dict = field(default_factory=dict)
    engine_version: str = ENGINE_VERSION

    @property
    def ok(self):
        return all(c.status != "failed" for c in self.claims)

    def sorted_claims(self):
        return sorted(self.claims, key=lambda c: c.claim)

    def as_dict(self):
        return {
            "schema": SCHEMA,
            "datum": self.datum,
            "engine_version": self.engine_version,
            "root_system": self.root_system,
            "claims": [c.as_dict() for c in self.sorted_claims()],
        }


# ---------------------------------------------------------------------------
# residual rendering

def _split_by_weight(D, e: VAExpr):
    groups = {}
    for m, c in e.terms.items():
        w = conformal_weight(m, D.grading)
        groups.setdefault(w, {})[m] = c
    return [(w, VAExpr._wrap(groups[w])) for w in sorted(groups)]


def render_residual(D, r, fmt="text") -> Optional[str]:
    """Render a residual; VAExprs are split into conformal-weight blocks,
    lowest weight first, so a failure shows its weight at a glance."""
    if r is None:
        return None
    E = D.engine
    latex = fmt == "latex"
    namer = E.latex_namer if latex else E.namer
    if isinstance(r, VAExpr):
        if not r:
            return None
        blocks = []
        for w, part in _split_by_weight(D, r):
            body = render_latex(part, namer) if latex else render_text(part, namer)
            if latex:
                blocks.append(rf"\text{{wt }}{format_rational(w)}\colon {body}")
            else:
                blocks.append(f"[wt {format_rational(w)}] {body}")
        return (r";\quad " if latex else "; ").join(blocks)
    if isinstance(r, LambdaPoly):
        return render_lambda(r, namer, latex=latex) if r else None
    if isinstance(r, dict):
        parts = []
        for key in sorted(r):
            v = r[key]
            body = render_latex(v, namer) if latex else render_text(v, namer)
            parts.append(f"{key}: {body}")
        return "; ".join(parts) or None
    if isinstance(r, RatFunK):
        return str(r)
    return str(r)


def record(D, result, fmt="text", wall_time=None) -> ClaimRecord:
    res = None if result.ok else render_residual(D, result.residual, fmt)
    return ClaimRecord(result.claim, result.status, res, result.detail, wall_time)


def root_system_record(D) -> dict:
    """The positive-root choice behind rho, by basis-element names."""
    names = D.alg.names
    rd = D.rho
    return {
        "cartan": [names[i] for i in rd.cartan],
        "positive_roots": [names[i] for i in rd.positive_roots],
        "rho": [format_rational(c) for c in rd.rho],
    }


def make_report(D, results, fmt="text", times=None) -> Report:
    times = times or {}
    recs = [record(D, r, fmt, times.get(r.claim)) for r in results]
    return Report(D.name, recs, root_system_record(D))


# ---------------------------------------------------------------------------
# emitters

def to_json(rep: Report) -> str:
    return json.dumps(rep.as_dict(), sort_keys=True, ensure_ascii=False, indent=1)


def to_text(rep: Report) -> str:
    lines = [f"datum {rep.datum}  (engine {rep.engine_version})"]
    rs = rep.root_system
    if rs:
        lines.append("positive roots: " + ", ".join(rs.get("positive_roots", [])))
    for c in rep.sorted_claims():
        t = "" if c.wall_time is None else f"  {c.wall_time:.2f}s"
        line = f"  {c.claim:<12} {c.status}{t}"
        if c.detail:
            line += f"  ({c.detail})"
        lines.append(line)
        if c.residual:
            lines.append(f"      residual: {c.residual}")
    n_bad = sum(c.status == "failed" for c in rep.claims)
    lines.append("all claims verified" if not n_bad else f"{n_bad} claim(s) failed")
    return "\n".join(lines)


_LATEX_ESC = {"_": r"\_", "&": r"\&", "%": r"\%", "#": r"\#", "$": r"\$"}


def _tex_escape(s: str) -> str:
    return "".join(_LATEX_ESC.get(ch, ch) for ch in s)


LATEX_PREAMBLE = r"""\documentclass{article}
\usepackage[utf8]{inputenc}
\usepackage{amsmath,amssymb}
\usepackage{longtable}
\begin{document}
"""


def latex_document(body: str) -> str:
    return LATEX_PREAMBLE + body + "\n\\end{document}\n"


def to_latex(rep: Report) -> str:
    """Standalone LaTeX document; residuals must have been rendered with
    fmt='latex'."""
    rows = []
    for c in rep.sorted_claims():
        res = "" if not c.residual else f"${c.residual}$"
        rows.append(rf"\texttt{{{_tex_escape(c.claim)}}} & {c.status} & {res} \\")
    roots = ", ".join(_tex_escape(r) for r in rep.root_system.get("positive_roots", []))
    body = "\n".join([
        rf"\section*{{Verification report: \texttt{{{_tex_escape(rep.datum)}}}}}",
        rf"Engine version {_tex_escape(rep.engine_version)}. Positive roots: {roots}.",
        r"\begin{longtable}{lll}",
        r"claim & status & residual \\ \hline",
        *rows,
        r"\end{longtable}",
    ])
    return latex_document(body)


def emit(rep: Report, fmt: str) -> str:
    if fmt == "json":
        return to_json(rep)
    if fmt == "latex":
        return to_latex(rep)
    return to_text(rep)
