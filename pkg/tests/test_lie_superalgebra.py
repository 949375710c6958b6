import pytest
import sympy
from hypothesis import given, settings, strategies as st

from walgebra import _linalg as LA
from walgebra.exact_arith import Q
from walgebra.lie_superalgebra import (NotScalar, SuperAlgebra, killing_form, validate,
                                       grade_by_x)
from walgebra.catalog import builtin_algebra, builtin_datum
from walgebra.brst.verify import inject_bracket_fault


def test_sl2_structure(sl2):
    a = sl2.alg
    e, h, f = (a.vec({n: 1}) for n in "ehf")
    assert a.bracket(e, f) == h
    assert a.bracket(h, e) == a.vec({"e": 2})
    assert a.bracket(h, f) == a.vec({"f": -2})
    assert a.pair(h, h) == 2 and a.pair(e, f) == 1


def test_killing_sl2(sl2):
    h = sl2.alg.vec({"h": 1})
    # ad h = diag(2, 0, -2)
    assert killing_form(sl2.alg, None, h, h) == 8


@pytest.mark.parametrize("name,hv", [("sl2-principal", 2), ("sl3-principal", 3),
                                     ("sl3-minimal", 3), ("sl4-minimal", 4),
                                     ("osp12-principal", Q("3/2")), ("sl21-minimal", 1)])
def test_dual_coxeter(name, hv):
    assert builtin_datum(name).hvee == hv


def test_gl22_casimir_not_scalar():
    D = builtin_datum("gl22-principal")
    assert isinstance(D.hvee, NotScalar)
    assert D.gl_mode


def test_supersymmetry_of_bracket(datum):
    alg = datum.alg
    for (i, j), terms in alg.brackets.items():
        s = 1 if (alg.parity[i] and alg.parity[j]) else -1
        other = alg.bracket_basis(j, i)
        for kk, c in terms.items():
            assert other.get(kk, 0) == s * c


def test_validate_catalog(datum):
    assert validate(datum.alg).ok


def test_validate_flags_broken_jacobi():
    alg = builtin_algebra("sl3-minimal")
    i, j = alg.index("E12"), alg.index("E23")
    bad = inject_bracket_fault(alg, i, j, alg.index("E13"))
    rep = validate(bad)
    assert not rep.ok and rep.violations


def test_validate_flags_noninvariant_form():
    alg = builtin_algebra("sl2-principal")
    form = [list(r) for r in alg.form]
    form[1][1] = Q(3)
    bad = SuperAlgebra("bad", alg.names, alg.parity, alg.brackets, form, alg.x, alg.f)
    rep = validate(bad)
    assert not rep.ok


def test_grading_dims():
    d = builtin_datum("sl2-principal").grading.dims()
    assert [d[Q(m)] for m in (1, 0, -1)] == [1, 1, 1]
    d = builtin_datum("sl3-minimal").grading.dims()
    assert [d[Q(m)] for m in ("1", "1/2", "0", "-1/2", "-1")] == [1, 2, 2, 2, 1]


def test_osp12_odd_part_half_integral():
    D = builtin_datum("osp12-principal")
    for i, p in enumerate(D.alg.parity):
        assert (D.m(i).denominator == 2) == bool(p)


def test_minimal_rho_pos_is_2x():
    D = builtin_datum("sl3-minimal")
    x = D.alg.x
    assert D.rho.rho_pos == tuple(2 * c for c in x)


def test_omega0_on_half(sl3min):
    om = sl3min.omega0
    assert om.diagonalizable[Q("1/2")]
    assert om.eigenvalues[Q("1/2")] == [2, 2]


def test_centralizer(datum):
    """g^f is spanned by the computed basis and commutes with f."""
    alg = datum.alg
    for vecs in datum.centralizer.by_degree.values():
        for v in vecs:
            assert not any(alg.bracket(alg.f, v))


def test_grade_by_x_eigen(datum):
    gr = grade_by_x(datum.alg)
    alg = datum.alg
    for i in range(alg.dim):
        ad = alg.bracket(alg.x, alg.basis_vector(i))
        assert ad == tuple(gr.degree[i] * c for c in alg.basis_vector(i))


# -- linear algebra against sympy ------------------------------------------

mats = st.integers(1, 4).flatmap(lambda n: st.lists(
    st.lists(st.integers(-3, 3), min_size=n + 1, max_size=n + 1), min_size=n, max_size=n))


@settings(max_examples=60, deadline=None)
@given(mats)
def test_rank_nullspace(m):
    A = [[Q(x) for x in r] for r in m]
    S = sympy.Matrix(m)
    assert LA.rank(A) == S.rank()
    ns = LA.nullspace(A)
    assert len(ns) == S.cols - S.rank()
    for v in ns:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in A)


@settings(max_examples=40, deadline=None)
@given(mats)
def test_inverse(m):
    sq = [r[:len(m)] for r in m]
    A = [[Q(x) for x in r] for r in sq]
    if sympy.Matrix(sq).det() == 0:
        with pytest.raises(LA.SingularMatrix):
            LA.inverse(A)
    else:
        assert LA.matmul(A, LA.inverse(A)) == LA.identity(len(A))
