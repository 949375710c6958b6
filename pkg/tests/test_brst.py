import pytest

from walgebra.exact_arith import K, ONE, Q, RatFunK, ratfun_eval, scalar
from walgebra.conformal.expr import LambdaPoly, VAExpr
from walgebra.catalog import builtin_datum
from walgebra.brst import verify as V
from walgebra.brst import identities as I
from walgebra.brst.elements import (CriticalStructure, NotInCentralizer, J_current, J_f,
                                    J_hat0, L_total)

# central charges from the standard closed forms for these W-algebras
# (Virasoro, W3, Bershadsky-Polyakov, N=1, N=2 and the minimal sl4 formula
# c = k dim g/(k + h) - 6k + h - 4)
KNOWN_C = {
    "sl2-principal": 1 - 6 * (K + 1) * (K + 1) / (K + 2),
    "sl3-principal": 2 - 24 * (K + 2) * (K + 2) / (K + 3),
    "sl3-minimal": -(2 * K + 3) * (3 * K + 1) / (K + 3),
    "sl4-minimal": 15 * K / (K + 4) - 6 * K,
    "osp12-principal": scalar(Q("3/2")) - 12 * (K + 1) * (K + 1) / (2 * K + 3),
    "sl21-minimal": -3 * (2 * K + 1),
    "gl22-principal": scalar(0),
}


def test_d_squared(datum):
    assert V.check_d_squared(datum).ok


def test_d0_closed_forms(datum):
    assert V.check_d0_generators(datum).ok
    assert V.check_d0_J(datum).ok


def test_d0_properties(datum):
    r = V.check_d0_properties(datum, seed=5, count=40)
    assert r.ok, r.detail


def test_d_is_primary(datum):
    assert V.check_d_primary(datum).ok


@pytest.mark.parametrize("fn", [V.check_ope_210, V.check_ope_215, V.check_ope_218])
def test_ope_families(datum, fn):
    assert fn(datum).ok


def test_thm31(datum):
    r = V.verify_thm31(datum)
    assert r.ok and r.residual is None


def test_thm32(datum):
    assert V.verify_thm32(datum).ok


def test_cor31(datum):
    assert V.check_cor31(datum).ok


def test_central_charge_known(datum):
    assert V.central_charge(datum) == KNOWN_C[datum.name]


def test_central_charge_value_and_pole(sl2):
    c = V.central_charge(sl2)
    assert ratfun_eval(c, Q("-1/2")) == 0


def test_sl2_ffr_L_is_free_boson(sl2):
    # in the bar engine h is a Heisenberg field with [h_l h] = (2k+4) l;
    # :hh:/(2(2k+4)) + a dh is Virasoro with c = 1 - 12 a^2 (2k+4)
    BE = sl2.bar_engine
    img = V.ffr_L(sl2)
    h = V._bar_current(sl2, sl2.alg.vec({"h": 1}))
    want = BE.nprod(h, h) * (ONE / (4 * (K + 2))) + BE.derive(h) * ((K + 1) / (2 * (K + 2)))
    assert img == want
    assert not V.virasoro_residual(BE, img, KNOWN_C["sl2-principal"])


def test_ffr_rejects_positive_currents(sl3min):
    e = sl3min.current(sl3min.alg.vec({"E13": 1}))
    with pytest.raises(V.NotInBarSubalgebra):
        V.ffr(sl3min, e)


def test_centralizer_guard(sl3min):
    with pytest.raises(NotInCentralizer):
        J_hat0(sl3min, sl3min.alg.vec({"H1": 1}))


def test_gl_standard_mode_refused():
    D = builtin_datum("gl22-principal")
    with pytest.raises(CriticalStructure):
        J_f(D, "standard")


def test_witness_fails_with_wrong_rho(sl3min):
    # the witness identity depends on rho_>0; a wrong vector must show up
    bad = tuple(c * 2 for c in sl3min.rho.rho_pos)
    assert not V.verify_thm32(sl3min, rho_pos=bad).ok


# -- identity catalog ------------------------------------------------------

def test_identities(datum):
    bad = [r for r in I.verify_all_identities(datum) if r.status == "failed"]
    assert not bad, [(r.claim, r.detail) for r in bad]


def test_unknown_identity(sl2):
    with pytest.raises(I.UnknownIdentity):
        I.verify_identity(sl2, "9.99")


def test_skipped_identity_is_marked(sl2):
    r = I.verify_identity(sl2, "8.2")
    assert r.status == "skipped"


def test_killing_example(sl2):
    h = sl2.alg.vec({"h": 1})
    assert sl2.kappa(h, h) == 8 == 2 * sl2.hvee * sl2.form(h, h)


def test_beta_terms_sl3_minimal(sl3min):
    assert I.beta_value(sl3min) == 0
    # the opposite sign on the rho_1/2 term leaves 1/3
    assert I.beta_value(sl3min, sign_half=+1) == Q("1/3")
    assert not I.beta_from_brackets(sl3min)


def test_715_needs_shift_term(sl3min):
    """Without the -(k+h^vee)(x|v) part the l^2 coefficient is wrong for v
    in the Cartan; with it the bracket matches."""
    D = sl3min
    E = D.engine
    L = L_total(D).L
    v = D.alg.vec({"H1": 1})
    got = E.lambda_bracket(L, J_current(D, v)).coeff(2)
    assert got == VAExpr.vacuum(I.lambda2_715(D, v))
    assert got != VAExpr.vacuum(D.form(D.rho.rho_pos, v))


# -- fault injection -------------------------------------------------------

def test_fault_detected(sl3min):
    D = sl3min
    a = D.alg
    i, j, k = a.index("E12"), a.index("E23"), a.index("E13")
    bad = V.faulty_datum(D, i, j, k)
    d2, t31 = V.check_d_squared(bad), V.verify_thm31(bad)
    assert not (d2.ok and t31.ok)
    assert (d2.residual if not d2.ok else t31.residual)
