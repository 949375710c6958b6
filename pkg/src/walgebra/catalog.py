"""Built-in data and the JSON algebra-spec file format."""

from __future__ import annotations

import json
from functools import lru_cache

from .exact_arith import Q, format_rational, parse_rational
from .lie_superalgebra import (MalformedTable, SuperAlgebra, from_supermatrices,
                               validate)
from .brst.datum import Datum


class UnknownDatum(KeyError):
    pass


class ParseError(ValueError):
    def __init__(self, msg, field=None, line=None):
        loc = []
        if field is not None:
            loc.append(f"field {field}")
        if line is not None:
            loc.append(f"line {line}")
        super().__init__(f"{msg}" + (f" ({', '.join(loc)})" if loc else ""))
        self.field = field
        self.line = line


class ValidationError(ValueError):
    def __init__(self, violations):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


# ---------------------------------------------------------------------------
# matrix helpers

def _E(i, j, n):
    m = [[0] * n for _ in range(n)]
    m[i][j] = 1
    return m


def _lin(n, *pairs):
    out = [[Q(0)] * n for _ in range(n)]
    for c, m in pairs:
        for i in range(n):
            for j in range(n):
                if m[i][j]:
                    out[i][j] += Q(c) * m[i][j]
    return out


def _gl_basis(row_parity, traceless):
    """E_ij (i != j) and diagonal elements; for the traceless case the
    diagonal part is spanned by E_ii - (-1)^{..} E_{i+1,i+1} with zero supertrace."""
    n = len(row_parity)
    names, mats, par = [], [], []
    for i in range(n):
        for j in range(n):
            if i != j:
                names.append(f"E{i + 1}{j + 1}")
                mats.append(_E(i, j, n))
                par.append((row_parity[i] + row_parity[j]) % 2)
    cartan = []
    if traceless:
        for i in range(n - 1):
            # supertrace zero: E_ii - s E_{i+1,i+1} with s = (-1)^{p_i + p_{i+1}}
            s = -1 if (row_parity[i] + row_parity[i + 1]) % 2 else 1
            names.append(f"H{i + 1}")
            mats.append(_lin(n, (1, _E(i, i, n)), (-s, _E(i + 1, i + 1, n))))
            par.append(0)
            cartan.append(f"H{i + 1}")
    else:
        for i in range(n):
            names.append(f"E{i + 1}{i + 1}")
            mats.append(_E(i, i, n))
            par.append(0)
            cartan.append(f"E{i + 1}{i + 1}")
    return names, mats, par, cartan


def _sl(name, n, x, f):
    names, mats, par, cartan = _gl_basis([0] * n, True)
    return from_supermatrices(name, names, par, mats, [0] * n, x, f, cartan=cartan)


def _sl2():
    mats = [_E(0, 1, 2), _lin(2, (1, _E(0, 0, 2)), (-1, _E(1, 1, 2))), _E(1, 0, 2)]
    return from_supermatrices("sl2-principal", ["e", "h", "f"], [0, 0, 0], mats, [0, 0],
                              {"h": "1/2"}, {"f": 1}, cartan=["h"])


def _osp12():
    # osp(1|2) inside gl(1|2), coordinate parities (0, 1, 1); the form
    # -str(ab) gives (h|h) = 2.
    n = 3
    mats = [
        _E(1, 2, n),
        _lin(n, (1, _E(1, 1, n)), (-1, _E(2, 2, n))),
        _E(2, 1, n),
        _lin(n, (1, _E(0, 2, n)), (-1, _E(1, 0, n))),
        _lin(n, (1, _E(0, 1, n)), (1, _E(2, 0, n))),
    ]
    return from_supermatrices("osp12-principal", ["e", "h", "f", "E", "F"], [0, 0, 0, 1, 1],
                              mats, [0, 1, 1], {"h": "1/2"}, {"f": 1}, form_scale=-1,
                              cartan=["h"])


def _sl21():
    rp = [0, 0, 1]
    names, mats, par, cartan = _gl_basis(rp, True)
    return from_supermatrices("sl21-minimal", names, par, mats, rp,
                              {"H1": "1/2"}, {"E21": 1}, cartan=cartan)


def _gl22():
    rp = [0, 0, 1, 1]
    names, mats, par, cartan = _gl_basis(rp, False)
    x = {"E11": "1/2", "E22": "-1/2", "E33": "1/2", "E44": "-1/2"}
    ident = {f"E{i}{i}": 1 for i in range(1, 5)}
    return from_supermatrices("gl22-principal", names, par, mats, rp, x,
                              {"E21": 1, "E43": 1}, identity=ident, cartan=cartan)


_BUILDERS = {
    "sl2-principal": _sl2,
    "sl3-principal": lambda: _sl("sl3-principal", 3, {"H1": 1, "H2": 1}, {"E21": 1, "E32": 1}),
    "sl3-minimal": lambda: _sl("sl3-minimal", 3, {"H1": "1/2", "H2": "1/2"}, {"E31": 1}),
    "sl4-minimal": lambda: _sl("sl4-minimal", 4, {"H1": "1/2", "H2": "1/2", "H3": "1/2"},
                               {"E41": 1}),
    "osp12-principal": _osp12,
    "sl21-minimal": _sl21,
    "gl22-principal": _gl22,
}

BUILTIN_NAMES = tuple(_BUILDERS)


def builtin_algebra(name: str) -> SuperAlgebra:
    try:
        return _BUILDERS[name]()
    except KeyError:
        raise UnknownDatum(f"unknown datum {name!r}; known: {', '.join(BUILTIN_NAMES)}") from None


@lru_cache(maxsize=None)
def builtin_datum(name: str) -> Datum:
    return Datum(builtin_algebra(name))


# ---------------------------------------------------------------------------
# algebra-spec files

def algebra_to_dict(alg: SuperAlgebra) -> dict:
    fr = format_rational
    out = {
        "name": alg.name,
        "basis": [{"name": n, "parity": p} for n, p in zip(alg.names, alg.parity)],
        "form": [{"i": i, "j": j, "value": fr(c)}
                 for i, row in enumerate(alg.form) for j, c in enumerate(row) if c],
        "brackets": [{"i": i, "j": j,
                      "terms": [{"k": kk, "coeff": fr(c)} for kk, c in sorted(t.items())]}
                     for (i, j), t in sorted(alg.brackets.items())],
        "x": [fr(c) for c in alg.x],
        "f": [fr(c) for c in alg.f],
    }
    if alg.identity is not None:
        out["identity_element"] = [fr(c) for c in alg.identity]
    if alg.cartan is not None:
        out["cartan"] = list(alg.cartan)
    return out


def _rat(v, field):
    if isinstance(v, bool) or not isinstance(v, (str, int)):
        raise ParseError(f"expected an exact rational string, got {v!r}", field)
    try:
        return parse_rational(str(v))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {v!r}: {exc}", field) from None


def _get(d, key, ctx):
    if not isinstance(d, dict) or key not in d:
        raise ParseError(f"missing key {key!r}", ctx)
    return d[key]


def algebra_from_dict(data: dict) -> SuperAlgebra:
    name = _get(data, "name", "name")
    basis = _get(data, "basis", "basis")
    if not isinstance(basis, list) or not basis:
        raise ParseError("basis must be a nonempty list", "basis")
    names, parity = [], []
    for t, b in enumerate(basis):
        names.append(str(_get(b, "name", f"basis[{t}]")))
        p = _get(b, "parity", f"basis[{t}]")
        if p not in (0, 1):
            raise ParseError("parity must be 0 or 1", f"basis[{t}].parity")
        parity.append(p)
    n = len(names)

    def idx(v, field):
        if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
            raise ParseError(f"index {v!r} out of range", field)
        return v

    form = [[Q(0)] * n for _ in range(n)]
    for t, e in enumerate(_get(data, "form", "form")):
        i = idx(_get(e, "i", f"form[{t}]"), f"form[{t}].i")
        j = idx(_get(e, "j", f"form[{t}]"), f"form[{t}].j")
        form[i][j] = _rat(_get(e, "value", f"form[{t}]"), f"form[{t}].value")
    brackets = {}
    for t, e in enumerate(_get(data, "brackets", "brackets")):
        i = idx(_get(e, "i", f"brackets[{t}]"), f"brackets[{t}].i")
        j = idx(_get(e, "j", f"brackets[{t}]"), f"brackets[{t}].j")
        terms = {}
        for s, term in enumerate(_get(e, "terms", f"brackets[{t}]")):
            kk = idx(_get(term, "k", f"brackets[{t}].terms[{s}]"), f"brackets[{t}].terms[{s}].k")
            terms[kk] = _rat(_get(term, "coeff", f"brackets[{t}].terms[{s}]"),
                             f"brackets[{t}].terms[{s}].coeff")
        if (i, j) in brackets:
            raise ParseError("duplicate bracket entry", f"brackets[{t}]")
        brackets[(i, j)] = terms

    def coords(key, required=True):
        if key not in data:
            if required:
                raise ParseError(f"missing key {key!r}", key)
            return None
        v = data[key]
        if not isinstance(v, list) or len(v) != n:
            raise ParseError(f"{key} must list {n} coordinates", key)
        return [_rat(c, f"{key}[{t}]") for t, c in enumerate(v)]

    x = coords("x")
    f = coords("f")
    ident = coords("identity_element", required=False)
    cartan = data.get("cartan")
    if cartan is not None:
        cartan = [idx(c, f"cartan[{t}]") for t, c in enumerate(cartan)]
    try:
        return SuperAlgebra(name, names, parity, brackets, form, x, f,
                            identity=ident, cartan=cartan)
    except MalformedTable as exc:
        raise ParseError(str(exc)) from None


def save_datum(datum, path):
    alg = datum.alg if isinstance(datum, Datum) else datum
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(algebra_to_dict(alg), fh, indent=1, ensure_ascii=False)
        fh.write("\n")


def load_algebra(path) -> SuperAlgebra:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    alg = algebra_from_dict(data)
    rep = validate(alg)
    if not rep.ok:
        raise ValidationError(rep.violations)
    return alg


def load_datum(path) -> Datum:
    return Datum(load_algebra(path), validate_first=False)
