import json

from walgebra.exact_arith import K
from walgebra.conformal.expr import VAExpr
from walgebra.brst.verify import CheckResult
from walgebra.brst.elements import J_current
from walgebra import report as R


def test_residual_sorted_by_weight(sl3min):
    D = sl3min
    # weight 1 current plus weight 2 term: lower weight must come first
    a = J_current(D, D.alg.vec({"H1": 1}))
    r = D.engine.derive(a) * K + a
    s = R.render_residual(D, r)
    assert s.startswith("[wt 1]") and "[wt 2]" in s


def test_report_json_shape(sl3min):
    res = [CheckResult("b", True), CheckResult("a", False, VAExpr.vacuum(2), "x")]
    rep = R.make_report(sl3min, res)
    doc = json.loads(R.to_json(rep))
    assert [c["claim"] for c in doc["claims"]] == ["a", "b"]
    assert doc["claims"][0]["residual"] == "[wt 0] 2"
    assert doc["claims"][1]["residual"] is None
    assert doc["schema"] == R.SCHEMA
    assert not rep.ok


def test_text_report(sl3min):
    rep = R.make_report(sl3min, [CheckResult("z", True, detail="fine")])
    txt = R.to_text(rep)
    assert "all claims verified" in txt and "z" in txt
