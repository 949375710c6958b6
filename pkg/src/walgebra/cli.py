"""Command-line interface.

    walgebra check <datum>
    walgebra verify <datum> --claim {thm3.1,thm3.2,cor3.1,ope2.10,ope2.15,ope2.18,identities,all}
    walgebra central-charge <datum> [--k r]
    walgebra ffr <datum> --element {L, Jhat0:<v>, Jhalf:<v>}
    walgebra show <datum> --element <tag>

<datum> is a built-in name or a path to an algebra-spec JSON file.
Exit codes: 0 ok, 1 a claim failed, 2 bad input, 3 internal mismatch.
Set WALGEBRA_WORKERS to run independent claims in worker processes.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .exact_arith import PoleAtPoint, Q, format_rational, parse_rational, ratfun_eval
from .lie_superalgebra import (CentralityFailure, FNotDegreeMinusOne, MalformedTable,
                               NotHalfInteger, NotHomogeneous, SingularGram, validate)
from .catalog import (BUILTIN_NAMES, ParseError, UnknownDatum, ValidationError,
                      builtin_datum, load_datum)
from .conformal.properties import PropertyFailure, run_suite
from .conformal.render import render_latex, render_text
from .brst.datum import ConditionFailure
from .brst import elements as El
from .brst import verify as V
from .brst.identities import IDENTITY_IDS, UnknownIdentity, verify_identity
from . import report as R

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_MISMATCH = 0, 1, 2, 3
WORKERS_ENV = "WALGEBRA_WORKERS"

INPUT_ERRORS = (PoleAtPoint, UnknownDatum, ParseError, ValidationError, UnknownIdentity,
                MalformedTable, NotHomogeneous, NotHalfInteger, FNotDegreeMinusOne,
                SingularGram, CentralityFailure, ConditionFailure, El.NotInCentralizer,
                El.CriticalStructure, V.NotInBarSubalgebra, OSError)


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# datum and element lookup

def resolve_datum(spec: str):
    if spec in BUILTIN_NAMES:
        return builtin_datum(spec)
    if os.path.exists(spec):
        return load_datum(spec)
    raise UnknownDatum(f"unknown datum {spec!r}: not a built-in ({', '.join(BUILTIN_NAMES)}) "
                       "and no such file")


_TERM = re.compile(r"\s*([+-]?)\s*(?:([0-9]+(?:/[0-9]+)?)\s*\*\s*)?([A-Za-z][A-Za-z0-9_']*)\s*")


def parse_vector(D, text: str):
    """'H2 - H1', '2*E12 + 1/2*H1' or a single basis name."""
    names = D.alg.names
    out = [Q(0)] * len(names)
    pos = 0
    text = text.strip()
    if not text:
        raise InputError("empty element")
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise InputError(f"cannot parse element {text!r} at position {pos}")
        sign, coeff, name = m.groups()
        if pos and not sign:
            raise InputError(f"missing + or - before {name!r}")
        if name not in names:
            raise InputError(f"unknown basis element {name!r}; basis: {', '.join(names)}")
        c = parse_rational(coeff) if coeff else Q(1)
        out[names.index(name)] += -c if sign == "-" else c
        pos = m.end()
    return tuple(out)


def _centralizer_vector(D, text, degree):
    """An element of g^f_j: an index into the computed basis of that space or
    a linear combination of basis names."""
    basis = D.centralizer.by_degree.get(Q(degree), ())
    if text.isdigit():
        i = int(text)
        if i >= len(basis):
            raise InputError(f"g^f_{degree} has dimension {len(basis)}")
        return basis[i]
    return parse_vector(D, text)


def element(D, tag: str):
    """Named elements for `show`:
    d, L, Jf, W1, W2, J:<v>, Jhat0:<v>, Jhalf:<v>."""
    kind, _, arg = tag.partition(":")
    if kind == "d":
        return V.d_element(D)
    if kind == "L":
        return El.L_total(D).L
    if kind == "Jf":
        return El.J_f(D)
    if kind in ("W1", "W2"):
        return El.witness(D)[kind == "W2"]
    if not arg:
        raise InputError(f"element tag {tag!r} needs an argument, e.g. {kind}:<name>")
    if kind == "J":
        return El.J_current(D, parse_vector(D, arg))
    if kind == "Jhat0":
        return El.J_hat0(D, _centralizer_vector(D, arg, 0))
    if kind == "Jhalf":
        return El.J_half(D, _centralizer_vector(D, arg, "-1/2"))
    raise InputError(f"unknown element tag {tag!r}; use d, L, Jf, W1, W2, J:<v>, "
                     "Jhat0:<v> or Jhalf:<v>")


def ffr_element(D, tag: str):
    kind, _, arg = tag.partition(":")
    if kind == "L" and not arg:
        return V.ffr_L(D)
    if kind == "Jhat0" and arg:
        return V.ffr(D, El.J_hat0(D, _centralizer_vector(D, arg, 0)))
    if kind == "Jhalf" and arg:
        return V.ffr(D, El.J_half(D, _centralizer_vector(D, arg, "-1/2")))
    raise InputError(f"ffr element must be L, Jhat0:<v> or Jhalf:<v>, got {tag!r}")


# ---------------------------------------------------------------------------
# claims

def _props(D, seed):
    try:
        counts = run_suite(D.engine, seed=seed, grading=D.grading)
    except PropertyFailure as exc:
        return V.CheckResult("lambda-props", False, exc.residual, f"{exc.name} fails")
    return V.CheckResult("lambda-props", True, None,
                         ", ".join(f"{k} {v}" for k, v in sorted(counts.items())))


def _validate(D):
    rep = validate(D.alg)
    return V.CheckResult("validate", rep.ok, "; ".join(rep.violations) or None,
                         "super-Jacobi, invariance and supersymmetry of the form")


CLAIMS = {
    "thm3.1": lambda D, seed: [V.verify_thm31(D)],
    "thm3.2": lambda D, seed: [V.verify_thm32(D)],
    "cor3.1": lambda D, seed: [V.check_cor31(D)],
    "ope2.10": lambda D, seed: [V.check_ope_210(D)],
    "ope2.15": lambda D, seed: [V.check_ope_215(D)],
    "ope2.18": lambda D, seed: [V.check_ope_218(D)],
    "identities": lambda D, seed: [verify_identity(D, i) for i in IDENTITY_IDS],
}
# extra checks that only `all` (and `check`) run
EXTRA = {
    "validate": lambda D, seed: [_validate(D)],
    "d2": lambda D, seed: [V.check_d_squared(D)],
    "2.6": lambda D, seed: [V.check_d0_generators(D)],
    "2.13": lambda D, seed: [V.check_d0_J(D)],
    "d0-props": lambda D, seed: [V.check_d0_properties(D, seed=seed)],
    "dL": lambda D, seed: [V.check_d_primary(D)],
    "lambda-props": lambda D, seed: [_props(D, seed)],
}
CLAIM_CHOICES = tuple(CLAIMS) + ("all",)


def expand_claims(claims):
    out = []
    for c in claims:
        if c == "all":
            out.extend(list(EXTRA) + list(CLAIMS))
        elif c in CLAIMS or c in EXTRA:
            out.append(c)
        elif c in IDENTITY_IDS:
            out.append("id:" + c)
        else:
            raise InputError(f"unknown claim {c!r}; choose from {', '.join(CLAIM_CHOICES)} "
                             "or an identity id")
    return list(dict.fromkeys(out))


def run_claim(datum_spec, claim, seed):
    """Worker entry point: returns [(CheckResult, seconds)]."""
    D = resolve_datum(datum_spec)
    t0 = time.perf_counter()
    if claim.startswith("id:"):
        res = [verify_identity(D, claim[3:])]
    else:
        res = (CLAIMS.get(claim) or EXTRA[claim])(D, seed)
    dt = time.perf_counter() - t0
    return [(r, dt / len(res)) for r in res]


def run_claims(datum_spec, claims, seed=0, workers=None):
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1") or 1)
    if workers > 1 and len(claims) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            futs = [ex.submit(run_claim, datum_spec, c, seed) for c in claims]
            chunks = [f.result() for f in futs]
    else:
        chunks = [run_claim(datum_spec, c, seed) for c in claims]
    out = [x for ch in chunks for x in ch]
    out.sort(key=lambda t: t[0].claim)
    return out


def _report(D, pairs, fmt, timing):
    results = [r for r, _ in pairs]
    times = {r.claim: round(t, 3) for r, t in pairs} if timing else None
    return R.make_report(D, results, "latex" if fmt == "latex" else "text", times)


# ---------------------------------------------------------------------------
# commands

def cmd_check(args, out):
    D = resolve_datum(args.datum)
    pairs = run_claims(args.datum, ["validate", "d2"], args.seed)
    rep = _report(D, pairs, args.format, args.timing)
    print(R.emit(rep, args.format), file=out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_verify(args, out):
    D = resolve_datum(args.datum)
    claims = expand_claims(args.claim or ["all"])
    pairs = run_claims(args.datum, claims, args.seed)
    rep = _report(D, pairs, args.format, args.timing)
    print(R.emit(rep, args.format), file=out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_central_charge(args, out):
    D = resolve_datum(args.datum)
    c = V.central_charge(D)
    value = None
    if args.k is not None:
        try:
            k0 = parse_rational(args.k)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        value = ratfun_eval(c, k0)
    if args.format == "json":
        doc = {"datum": D.name, "central_charge": str(c)}
        if value is not None:
            doc["k"] = format_rational(parse_rational(args.k))
            doc["value"] = format_rational(value)
        print(json.dumps(doc, sort_keys=True, ensure_ascii=False), file=out)
    elif args.format == "latex":
        s = format_rational(value) if value is not None else str(c)
        print(R.latex_document(rf"$c = {s}$"), file=out)
    else:
        print(format_rational(value) if value is not None else str(c), file=out)
    return EXIT_OK


def _emit_expr(D, label, e, fmt, out):
    E = D.engine      # the bar engine uses the same names
    if fmt == "json":
        print(json.dumps({"datum": D.name, "element": label,
                          "text": render_text(e, E.namer),
                          "latex": render_latex(e, E.latex_namer)},
                         sort_keys=True, ensure_ascii=False), file=out)
    elif fmt == "latex":
        print(R.latex_document(rf"\[ {render_latex(e, E.latex_namer)} \]"), file=out)
    else:
        print(render_text(e, E.namer), file=out)


def cmd_ffr(args, out):
    D = resolve_datum(args.datum)
    _emit_expr(D, args.element, ffr_element(D, args.element), args.format, out)
    return EXIT_OK


def cmd_show(args, out):
    D = resolve_datum(args.datum)
    _emit_expr(D, args.element, element(D, args.element), args.format, out)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="walgebra",
                                description="Exact checks on the BRST complex of W-algebras.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "latex"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    common.add_argument("--timing", action="store_true", help="record wall times in reports")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="validate the datum and check d^2 = 0")
    s.add_argument("datum")
    s.set_defaults(fn=cmd_check)

    s = sub.add_parser("verify", parents=[common], help="verify claims on a datum")
    s.add_argument("datum")
    s.add_argument("--claim", action="append",
                   help=f"one of {', '.join(CLAIM_CHOICES)} or an identity id; repeatable")
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("central-charge", parents=[common], help="central charge of L")
    s.add_argument("datum")
    s.add_argument("--k", help="evaluate at this rational level")
    s.set_defaults(fn=cmd_central_charge)

    s = sub.add_parser("ffr", parents=[common], help="free field realization of a generator")
    s.add_argument("datum")
    s.add_argument("--element", required=True, help="L, Jhat0:<v> or Jhalf:<v>")
    s.set_defaults(fn=cmd_ffr)

    s = sub.add_parser("show", parents=[common], help="print a named element")
    s.add_argument("datum")
    s.add_argument("--element", required=True,
                   help="d, L, Jf, W1, W2, J:<v>, Jhat0:<v> or Jhalf:<v>")
    s.set_defaults(fn=cmd_show)
    return p


def _glue_negative_values(argv):
    """argparse takes '--k -1/2' for two options; rewrite it as '--k=-1/2'."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in ("--k", "--seed") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    argv = _glue_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.fn(args, out)
    except V.Mismatch as exc:
        print(f"internal mismatch: {exc}", file=err)
        return EXIT_MISMATCH
    except (InputError,) + INPUT_ERRORS as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {type(exc).__name__}: {msg}", file=err)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
