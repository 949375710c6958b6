"""Small worked examples on sl2 and sl3, each checked by hand."""

from walgebra.exact_arith import K, Q, scalar
from walgebra.conformal.expr import PHI, PHI_UP, LambdaPoly, VAExpr
from walgebra.lie_superalgebra import SuperAlgebra, validate
from walgebra.brst import verify as V
from walgebra.brst.elements import J_current


def _c(D, n):
    return D.current(D.alg.vec({n: 1}))


def test_killing_pieces(sl2):
    h = sl2.alg.vec({"h": 1})
    assert sl2.kappa(h, h, 0) == 0
    assert sl2.kappa(h, h, "pos") == 4


def test_dual_basis_sl2(sl2):
    a = sl2.alg
    assert sl2.dual(a.index("e")) == a.vec({"f": 1})
    assert sl2.dual(a.index("h")) == a.vec({"h": Q("1/2")})
    assert sl2.dual(a.index("f")) == a.vec({"e": 1})


def test_rho_pos_sl2(sl2):
    assert sl2.rho.rho_pos == sl2.alg.vec({"h": Q("1/2")}) == tuple(sl2.alg.x)


def test_omega0_sl2(sl2):
    om = sl2.omega0
    assert all(c == 0 for row in om.blocks[Q(0)] for c in row)
    # on g_1: (ad h/2)(ad h) e = 2e, i.e. 2 ad rho_>0
    assert om.eigenvalues[Q(1)] == [2]


def test_invariance_violation():
    from walgebra.catalog import builtin_algebra
    alg = builtin_algebra("sl2-principal")
    br = {k: dict(v) for k, v in alg.brackets.items()}
    e, h, f = (alg.index(n) for n in "ehf")
    br[(e, f)] = {h: Q(2)}
    br[(f, e)] = {h: Q(-2)}
    bad = SuperAlgebra("bad", alg.names, alg.parity, br, alg.form, alg.x, alg.f)
    assert not validate(bad).ok


def test_sl3_minimal_centralizer(sl3min):
    c = sl3min.centralizer
    assert c.good and c.iso_half and c.dim == 4


def test_normal_order_fe(sl2):
    E = sl2.engine
    e, h, f = (_c(sl2, n) for n in "ehf")
    assert E.nprod(f, e) == E.nprod(e, f) - E.derive(h)


def test_h_on_ee(sl2):
    E = sl2.engine
    e, h = _c(sl2, "e"), _c(sl2, "h")
    ee = E.nprod(e, e)
    assert E.lambda_bracket(h, ee) == LambdaPoly({0: ee * 4})


def test_d_sl2(sl2):
    E = sl2.engine
    i = sl2.alg.index("e")
    pu = E.gen((PHI_UP, i))
    assert V.d_element(sl2) == E.nprod(_c(sl2, "e"), pu) + pu


def test_d0_on_generators_sl2(sl2):
    E = sl2.engine
    i = sl2.alg.index("e")
    pu, pe = E.gen((PHI_UP, i)), E.gen((PHI, i))
    assert V.apply_d0(sl2, _c(sl2, "f")) == E.nprod(pu, _c(sl2, "h")) + E.derive(pu) * K
    assert V.apply_d0(sl2, pe) == _c(sl2, "e") + VAExpr.vacuum()


def test_J_sl2(sl2):
    f = sl2.alg.vec({"f": 1})
    assert J_current(sl2, f) == sl2.current(f)


def test_d0_L_zero(datum):
    L = V.L_total(datum).L
    assert not V.apply_d0(datum, L)
