import io
import json

import pytest

from walgebra.cli import main, parse_vector
from walgebra.catalog import builtin_datum, save_datum


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_verify_json_example():
    code, out, _ = run("verify", "sl3-minimal", "--claim", "thm3.1", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["claims"] == [{"claim": "thm3.1", "status": "verified",
                              "residual": None, "wall_time": None}]
    assert doc["datum"] == "sl3-minimal"
    assert doc["root_system"]["positive_roots"]


def test_central_charge_examples():
    assert run("central-charge", "sl2-principal", "--k", "-1/2")[:2] == (0, "0\n")
    code, _, err = run("central-charge", "sl2-principal", "--k", "-2")
    assert code == 2 and "PoleAtPoint" in err
    code, out, _ = run("central-charge", "sl3-minimal", "--format", "json")
    assert json.loads(out)["central_charge"] == "(-6*k^2 - 11*k - 3)/(k + 3)"


def test_show_J_h():
    code, out, _ = run("show", "sl2-principal", "--element", "J:h")
    assert code == 0 and out.strip() == "h + 2:φ_e φ^e:"


def test_ffr_elements():
    code, out, _ = run("ffr", "sl3-minimal", "--element", "Jhalf:E32")
    assert code == 0 and "Φ_E12" in out
    assert run("ffr", "sl3-minimal", "--element", "Jhat0:H2 - H1")[0] == 0
    assert run("ffr", "sl3-minimal", "--element", "L")[0] == 0
    assert run("ffr", "sl3-minimal", "--element", "Jhat0:H1")[0] == 2   # not in g^f


def test_input_errors():
    assert run("verify", "no-such-datum")[0] == 2
    assert run("verify", "sl2-principal", "--claim", "bogus")[0] == 2
    assert run("show", "sl2-principal", "--element", "J:zz")[0] == 2
    assert run("frobnicate")[0] == 2


def test_check_and_file_input(tmp_path):
    p = tmp_path / "sl21.json"
    save_datum(builtin_datum("sl21-minimal"), p)
    code, out, _ = run("check", str(p))
    assert code == 0 and "d2" in out and "validate" in out


def test_json_deterministic():
    a = run("verify", "sl21-minimal", "--claim", "all", "--format", "json", "--seed", "4")
    b = run("verify", "sl21-minimal", "--claim", "all", "--format", "json", "--seed", "4")
    assert a == b and a[0] == 0


def test_workers_match_serial(monkeypatch):
    serial = run("verify", "sl2-principal", "--claim", "identities", "--format", "json")
    monkeypatch.setenv("WALGEBRA_WORKERS", "2")
    par = run("verify", "sl2-principal", "--claim", "thm3.1", "--claim", "identities",
              "--format", "json")
    ids = {c["claim"]: c for c in json.loads(serial[1])["claims"]}
    got = {c["claim"]: c for c in json.loads(par[1])["claims"]}
    assert par[0] == 0
    assert all(got[k] == v for k, v in ids.items())


def test_failure_exit_code(tmp_path, monkeypatch):
    # a datum file with a broken bracket fails validation: exit 2
    from walgebra.brst.verify import inject_bracket_fault
    from walgebra.catalog import algebra_to_dict
    alg = builtin_datum("sl3-minimal").alg
    bad = inject_bracket_fault(alg, alg.index("E12"), alg.index("E23"), alg.index("E13"))
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(algebra_to_dict(bad)), encoding="utf-8")
    assert run("check", str(p))[0] == 2


def test_verify_failure_exit_1(monkeypatch):
    from walgebra import cli
    from walgebra.brst.verify import CheckResult
    monkeypatch.setitem(cli.CLAIMS, "thm3.1",
                        lambda D, seed: [CheckResult("thm3.1", False, None, "forced")])
    code, out, _ = run("verify", "sl2-principal", "--claim", "thm3.1")
    assert code == 1 and "failed" in out


def test_latex_document():
    code, out, _ = run("verify", "sl3-minimal", "--claim", "ope2.18", "--format", "latex")
    assert code == 0
    assert out.startswith(r"\documentclass") and out.rstrip().endswith(r"\end{document}")
    assert out.count(r"\begin{longtable}") == out.count(r"\end{longtable}") == 1


def test_parse_vector():
    D = builtin_datum("sl3-minimal")
    v = parse_vector(D, "2*H1 - 1/2*E12")
    assert v[D.alg.index("H1")] == 2 and v[D.alg.index("E12")] == -0.5
