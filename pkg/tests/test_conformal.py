import random

import pytest

from walgebra.exact_arith import K, ONE, Q, scalar
from walgebra.conformal.engine import VertexAlgebra
from walgebra.conformal.expr import CURRENT, NEUTRAL, PHI, PHI_UP, LambdaPoly, VAExpr
from walgebra.conformal.render import render_latex, render_text
from walgebra.conformal import properties as P
from walgebra.brst.elements import J_current


def cur(D, name):
    return D.current(D.alg.vec({name: 1}))


def test_affine_sl2_brackets(sl2):
    E = sl2.engine
    e, h, f = (cur(sl2, n) for n in "ehf")
    assert E.lambda_bracket(e, f) == LambdaPoly({0: h, 1: VAExpr.vacuum(K)})
    assert E.lambda_bracket(h, h) == LambdaPoly({1: VAExpr.vacuum(2 * K)})
    assert E.lambda_bracket(h, e) == LambdaPoly({0: e * 2})


def test_ghost_pairing(sl2):
    E = sl2.engine
    i = sl2.alg.index("e")
    a, b = E.gen((PHI, i)), E.gen((PHI_UP, i))
    assert E.lambda_bracket(a, b) == LambdaPoly({0: VAExpr.vacuum()})
    # odd generators: :aa: = 0
    assert not E.nprod(a, a)


def test_nth_product_factorial(sl2):
    E = sl2.engine
    e, f = cur(sl2, "e"), cur(sl2, "f")
    assert E.nth_product(e, f, 1) == VAExpr.vacuum(K)
    L2 = E.nprod(e, f)
    lp = E.lambda_bracket(e, L2)
    assert E.nth_product(e, L2, 2) == lp.coeff(2) * 2


def test_quasi_commutator_by_hand(sl2):
    # :ef: - :fe: = int_{-d}^0 (h + k l) dl = dh
    E = sl2.engine
    e, h, f = (cur(sl2, n) for n in "ehf")
    assert E.nprod(e, f) - E.nprod(f, e) == E.derive(h)


def test_wick_by_hand(sl2):
    # [e_l :ff:] = 2:hf: + 2 df + (2k - 2) l f
    E = sl2.engine
    e, h, f = (cur(sl2, n) for n in "ehf")
    got = E.lambda_bracket(e, E.nprod(f, f))
    want = LambdaPoly({0: E.nprod(h, f) * 2 + E.derive(f) * 2, 1: f * (2 * K - 2)})
    assert got == want


def test_derivation_of_normal_product(sl2):
    E = sl2.engine
    e, f = cur(sl2, "e"), cur(sl2, "f")
    assert E.derive(E.nprod(e, f)) == E.nprod(E.derive(e), f) + E.nprod(e, E.derive(f))


def test_render_examples(sl2):
    E = sl2.engine
    j = J_current(sl2, sl2.alg.vec({"h": 1}))
    assert render_text(j, E.namer) == "h + 2:φ_e φ^e:"
    assert render_text(VAExpr.vacuum(), E.namer) == "1"
    assert render_text(VAExpr(), E.namer) == "0"
    assert render_latex(j, E.latex_namer) == r"h + 2\,:\varphi_{e}\,\varphi^{e}:"


def test_renormalize_idempotent(datum):
    rng = random.Random(3)
    E = datum.engine
    for _ in range(20):
        a = P.random_expr(E, rng, 3)
        assert E.renormalize(a) == a


def test_property_suite_engine(datum):
    counts = P.run_suite(datum.engine, seed=1, count=30, grading=datum.grading)
    assert counts["jacobi"] > 0 and counts["wick"] == 60


def test_property_suite_bar_engine(datum):
    counts = P.run_suite(datum.bar_engine, seed=2, count=30)
    assert counts["skew"] > 0


def test_charge_and_weight(sl3min):
    D = sl3min
    i = next(iter(D.grading.S_pos))
    assert P.charge(((PHI, i, 0), (PHI_UP, i, 0))) == 0
    assert P.charge(((PHI, i, 0),)) == 1
    j = next(iter(D.grading.S_half))
    assert P.conformal_weight(((NEUTRAL, j, 0),), D.grading) == Q("1/2")
    # phi^i has weight m_i, phi_i has weight 1 - m_i, d adds one
    assert P.conformal_weight(((PHI_UP, i, 1),), D.grading) == D.m(i) + 1


def _broken_sl2(sl2):
    """sl2 engine whose [h_l e] is scaled by 3/2 on one side only."""
    E = sl2.engine
    h, e = sl2.alg.index("h"), sl2.alg.index("e")
    base = E._gen_bracket_fn

    def gb(g, k2):
        out = base(g, k2)
        if g.kind == CURRENT and k2.kind == CURRENT and (g.index, k2.index) == (h, e):
            out = {p: [(x, c * Q("3/2")) for x, c in v] for p, v in out.items()}
        return out

    return VertexAlgebra(E.parity, gb, E.namer)


def test_suite_catches_broken_table(sl2):
    with pytest.raises(P.PropertyFailure) as exc:
        P.run_suite(_broken_sl2(sl2), seed=0, count=5)
    assert exc.value.name == "skew"


def test_random_inputs_deterministic(sl3min):
    a = P.random_pairs(sl3min.engine, 7, count=5)
    b = P.random_pairs(sl3min.engine, 7, count=5)
    assert a == b
