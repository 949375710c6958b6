import json

import pytest

from walgebra.catalog import (BUILTIN_NAMES, ParseError, UnknownDatum, ValidationError,
                              algebra_to_dict, builtin_datum, load_datum, save_datum)


def test_unknown_builtin():
    with pytest.raises(UnknownDatum):
        builtin_datum("e8-principal")


def test_roundtrip(tmp_path, datum):
    p = tmp_path / "d.json"
    save_datum(datum, p)
    D2 = load_datum(p)
    assert algebra_to_dict(D2.alg) == algebra_to_dict(datum.alg)
    assert D2.grading.dims() == datum.grading.dims()
    assert D2.rho.rho_pos == datum.rho.rho_pos


def _spec(tmp_path, mutate, name="sl2-principal"):
    d = algebra_to_dict(builtin_datum(name).alg)
    mutate(d)
    p = tmp_path / "s.json"
    p.write_text(json.dumps(d), encoding="utf-8")
    return p


def test_bad_rational(tmp_path):
    def m(d):
        d["form"][0]["value"] = "0.5"
    with pytest.raises(ParseError) as exc:
        load_datum(_spec(tmp_path, m))
    assert exc.value.field == "form[0].value"


def test_float_rejected(tmp_path):
    def m(d):
        d["x"][1] = 0.5
    with pytest.raises(ParseError):
        load_datum(_spec(tmp_path, m))


def test_missing_key(tmp_path):
    with pytest.raises(ParseError):
        load_datum(_spec(tmp_path, lambda d: d.pop("brackets")))


def test_json_syntax_error_has_line(tmp_path):
    p = tmp_path / "x.json"
    p.write_text('{\n "name": "x",\n oops\n}', encoding="utf-8")
    with pytest.raises(ParseError) as exc:
        load_datum(p)
    assert exc.value.line == 3


def test_noninvariant_form(tmp_path):
    def m(d):
        for e in d["form"]:
            if e["i"] == e["j"]:
                e["value"] = "3"
    with pytest.raises(ValidationError) as exc:
        load_datum(_spec(tmp_path, m))
    assert exc.value.violations


def test_odd_form_supersymmetry(tmp_path):
    # for odd u, v the form must be skew: (u|v) = -(v|u)
    def m(d):
        for e in d["form"]:
            if d["basis"][e["i"]]["parity"] and e["i"] != e["j"]:
                e["value"] = "1"
    with pytest.raises(ValidationError):
        load_datum(_spec(tmp_path, m, "osp12-principal"))


def test_builtin_names():
    assert set(BUILTIN_NAMES) == {"sl2-principal", "sl3-principal", "sl3-minimal",
                                  "sl4-minimal", "osp12-principal", "sl21-minimal",
                                  "gl22-principal"}
