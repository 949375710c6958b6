"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line
with its wall time against the time budget.  Tolerance is exact zero."""

import time
from contextlib import contextmanager

import pytest

from walgebra.exact_arith import K, Q, ratfun_eval, scalar
from walgebra.catalog import BUILTIN_NAMES, builtin_datum
from walgebra.conformal import properties as P
from walgebra.brst import verify as V
from walgebra.brst import identities as I
from walgebra.lie_superalgebra import validate

SUMMARY = {}
MINIMAL_WITH_HALF = ["sl3-minimal", "sl4-minimal", "sl21-minimal"]


@contextmanager
def criterion(capsys, n, title, budget):
    t0 = time.perf_counter()
    info = {"note": ""}
    ok = False
    try:
        yield info
        ok = True
    finally:
        dt = time.perf_counter() - t0
        in_time = dt < budget
        status = "PASS" if ok and in_time else "FAIL"
        line = f"criterion {n:>2} {status}  {title}  [{dt:.1f}s < {budget}s]"
        if info["note"]:
            line += f"  {info['note']}"
        if ok and not in_time:
            line += "  (over budget)"
        SUMMARY[n] = line
        with capsys.disabled():
            print("\n" + line)
    assert in_time, f"criterion {n} took {dt:.1f}s (budget {budget}s)"


def data(names=BUILTIN_NAMES):
    return [builtin_datum(n) for n in names]


# 1 ---------------------------------------------------------------------------

def test_c01_lambda_calculus(capsys):
    with criterion(capsys, 1, "lambda-calculus soundness, every datum", 60) as info:
        total = 0
        for D in data():
            for E, gr in ((D.engine, D.grading), (D.bar_engine, None)):
                counts = P.run_suite(E, seed=0, count=100, grading=gr)
                total += sum(counts.values())
            for ident in ("5.6", "5.7", "5.8"):
                r = I.verify_identity(D, ident)
                assert r.status == "verified", (D.name, ident, r.detail)
        info["note"] = f"{total} property cases"


# 2 ---------------------------------------------------------------------------

def test_c02_d_squared(capsys):
    with criterion(capsys, 2, "[d_l d] = 0 and d_(0)^2 = 0", 120):
        for D in data():
            r = V.check_d_squared(D)
            assert r.ok and r.residual is None, D.name
            r = V.check_d0_properties(D, seed=0, count=100)
            assert r.ok, (D.name, r.detail)


# 3 ---------------------------------------------------------------------------

def test_c03_closed_forms(capsys):
    with criterion(capsys, 3, "d_(0) closed forms on generators and J^(v)", 60):
        for D in data():
            assert V.check_d0_generators(D).ok, D.name
            assert V.check_d0_J(D).ok, D.name


# 4 ---------------------------------------------------------------------------

def test_c04_ope_families(capsys):
    with criterion(capsys, 4, "OPE families on the minimal data", 120):
        for D in data(MINIMAL_WITH_HALF):
            for fn in (V.check_ope_210, V.check_ope_215, V.check_ope_218):
                r = fn(D)
                assert r.ok, (D.name, r.claim, r.detail)


# 5 ---------------------------------------------------------------------------

def test_c05_thm31(capsys):
    with criterion(capsys, 5, "d_(0) J^{f} = 0, every datum", 600):
        for D in data():
            r = V.verify_thm31(D)
            assert r.ok and r.residual is None, D.name


# 6 ---------------------------------------------------------------------------

def test_c06_thm32_witness(capsys):
    with criterion(capsys, 6, "exactness witness for L, every datum", 600):
        for D in data():
            assert not V.witness_residual(D), D.name
            assert V.verify_thm32(D).ok, D.name


# 7 ---------------------------------------------------------------------------

def test_c07_central_charge(capsys):
    with criterion(capsys, 7, "central charge: formula = l^3 of [L_l L]", 120):
        for D in data():
            c = V.central_charge(D)          # raises Mismatch on disagreement
            assert not V.virasoro_residual(D.engine, V.L_total(D).L, c)
        c2 = V.central_charge(builtin_datum("sl2-principal"))
        assert c2 == 1 - 6 * (K + 1) * (K + 1) / (K + 2)
        assert ratfun_eval(c2, Q("-1/2")) == 0
        gl = builtin_datum("gl22-principal")
        assert V.central_charge(gl) == scalar(0)
        assert I.verify_identity(gl, "8.8").status == "verified"


# 8 ---------------------------------------------------------------------------

def test_c08_free_field_realization(capsys):
    with criterion(capsys, 8, "free field images of J^{a}, J^{v}, L", 120):
        for name in ("sl3-minimal", "sl21-minimal"):
            D = builtin_datum(name)
            r = V.check_cor31(D)
            assert r.ok, (name, r.detail)
        assert I.verify_identity(builtin_datum("sl2-principal"), "6.3").status == "verified"
        for name in MINIMAL_WITH_HALF:
            D = builtin_datum(name)
            assert D.rho.rho_pos == tuple((D.hvee - 1) * c for c in D.alg.x), name


# 9 ---------------------------------------------------------------------------

def test_c09_identity_catalog(capsys):
    with criterion(capsys, 9, "identity catalog on every applicable datum", 300) as info:
        verified = {i: 0 for i in I.IDENTITY_IDS}
        failed = []
        for D in data():
            for r in I.verify_all_identities(D):
                if r.status == "failed":
                    failed.append((D.name, r.claim, r.detail))
                elif r.status == "verified":
                    verified[r.claim] += 1
        assert not failed, failed
        never = [i for i, n in verified.items() if not n]
        assert not never, f"identities applicable to no catalog datum: {never}"
        info["note"] = (f"{len(I.IDENTITY_IDS)} ids, "
                        f"{sum(verified.values())} (datum, id) pairs")


# 10 --------------------------------------------------------------------------

def _all_faults(D):
    a = D.alg
    n = a.dim
    for i in range(n):
        for j in range(i, n):
            if i == j and not a.parity[i]:
                continue                    # [u, u] = 0 for even u
            for k in range(n):
                yield i, j, k


def test_c10_fault_injection(capsys):
    with criterion(capsys, 10, "single-constant faults in sl3-minimal", 60) as info:
        D = builtin_datum("sl3-minimal")
        seen, inner, missed = 0, 0, []
        for i, j, k in _all_faults(D):
            bad = V.faulty_datum(D, i, j, k)
            if D.m(i) > 0 or D.m(j) > 0:
                seen += 1
                d2 = V.check_d_squared(bad)
                r = d2 if not d2.ok else V.verify_thm31(bad)
                if r.ok or not r.residual:
                    missed.append(tuple(D.alg.names[t] for t in (i, j, k)))
            else:
                # d^2 and d_(0) J^{f} barely see brackets inside g_<=0
                # (most such faults pass both); they must still be
                # rejected by the table validation
                inner += 1
                assert not validate(bad.alg).ok, [D.alg.names[t] for t in (i, j, k)]
        assert not missed, missed
        info["note"] = (f"{seen} faults touching g_>0 all caught with nonzero residual; "
                        f"{inner} faults inside g_<=0 rejected by validate")


def test_zz_summary(capsys):
    """Prints the collected criterion lines once more, in order."""
    if len(SUMMARY) < 10:
        pytest.skip("only part of the acceptance suite was selected")
    with capsys.disabled():
        print()
        for n in sorted(SUMMARY):
            print(SUMMARY[n])
    assert all(" PASS " in SUMMARY[n] for n in SUMMARY)
