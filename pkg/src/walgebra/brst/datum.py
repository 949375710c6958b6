"""The datum (g, x, f) with all derived linear-algebra data, and the engines
for the complex C^k(g,x,f) and for the free field target V^{B0}(g_0) x F^ne."""

from __future__ import annotations

from functools import cached_property

from ..exact_arith import K, ONE, ZERO, Q, scalar
from ..lie_superalgebra import (CentralizerData, DualBases, Grading, NotScalar,
                                SuperAlgebra, check_datum, dual_basis,
                                dual_coxeter, grade_by_x, killing_form,
                                neutral_form, omega0, rho_vectors, validate,
                                MalformedTable)
from ..conformal.engine import VertexAlgebra
from ..conformal.expr import (CURRENT, NEUTRAL, PHI, PHI_UP, Generator,
                              VAExpr, add_term)


class ConditionFailure(ValueError):
    """The datum does not satisfy ad f: g_1/2 -> g_-1/2 bijective."""


class Datum:
    def __init__(self, alg: SuperAlgebra, validate_first=True):
        if validate_first:
            rep = validate(alg)
            if not rep.ok:
                raise MalformedTable("; ".join(rep.violations[:5]))
        self.alg = alg
        self.grading: Grading = grade_by_x(alg)
        self.centralizer: CentralizerData = check_datum(alg, self.grading)
        if not self.centralizer.iso_half:
            raise ConditionFailure("ad f is not an isomorphism g_1/2 -> g_-1/2")
        self.duals: DualBases = dual_basis(alg, self.grading)
        self.hvee = dual_coxeter(alg, self.duals)
        self.rho = rho_vectors(alg, self.grading, self.duals, self.centralizer)

    @property
    def name(self):
        return self.alg.name

    @property
    def gl_mode(self) -> bool:
        return isinstance(self.hvee, NotScalar)

    @property
    def hvee_value(self):
        """h^vee as used in formulas: 0 in gl(n|n) mode."""
        return Q(0) if self.gl_mode else self.hvee

    @cached_property
    def k_shift(self):
        """k + h^vee (just k in gl(n|n) mode)."""
        return K + self.hvee_value

    @cached_property
    def omega0(self):
        return omega0(self.alg, self.grading, self.duals)

    # ------------------------------------------------------------------
    def p(self, i) -> int:
        return self.alg.parity[i]

    def m(self, i):
        return self.grading.degree[i]

    def vec(self, spec):
        return self.alg.vec(spec)

    def e(self, i):
        return self.alg.basis_vector(i)

    def br(self, a, b):
        return self.alg.bracket(a, b)

    def form(self, a, b):
        return self.alg.pair(a, b)

    def kappa(self, a, b, sel="all"):
        return killing_form(self.alg, self.grading, a, b, sel)

    # ------------------------------------------------------------------
    # engines
    def _names(self):
        names = self.alg.names

        def text(g):
            kind, i = g
            if kind == CURRENT:
                return names[i]
            if kind == PHI:
                return f"φ_{names[i]}"
            if kind == PHI_UP:
                return f"φ^{names[i]}"
            return f"Φ_{names[i]}"

        def latex(g):
            kind, i = g
            nm = names[i]
            if kind == CURRENT:
                return nm
            if kind == PHI:
                return rf"\varphi_{{{nm}}}"
            if kind == PHI_UP:
                return rf"\varphi^{{{nm}}}"
            return rf"\Phi_{{{nm}}}"

        return text, latex

    @cached_property
    def engine(self) -> VertexAlgebra:
        alg, gr = self.alg, self.grading
        par = {}
        for i in gr.S:
            par[(CURRENT, i)] = alg.parity[i]
        for i in gr.S_pos:
            par[(PHI, i)] = 1 - alg.parity[i]
            par[(PHI_UP, i)] = 1 - alg.parity[i]
        for i in gr.S_half:
            par[(NEUTRAL, i)] = alg.parity[i]
        kform = [[K * c if c else ZERO for c in row] for row in alg.form]

        def gb(g, h):
            if g.kind == CURRENT and h.kind == CURRENT:
                out = {}
                terms = alg.bracket_basis(g.index, h.index)
                if terms:
                    out[0] = [((CURRENT, t), c) for t, c in terms.items()]
                c = kform[g.index][h.index]
                if c:
                    out[1] = [(None, c)]
                return out
            if g.kind == PHI and h.kind == PHI_UP:
                return {0: [(None, ONE)]} if g.index == h.index else {}
            if g.kind == PHI_UP and h.kind == PHI:
                if g.index != h.index:
                    return {}
                # skewsymmetry of [phi_i _l phi^i] = 1
                pp = 1 - alg.parity[g.index]
                return {0: [(None, -ONE if pp == 0 else ONE)]}
            if g.kind == NEUTRAL and h.kind == NEUTRAL:
                c = neutral_form(alg, g.index, h.index)
                return {0: [(None, c)]} if c else {}
            return {}

        text, latex = self._names()
        return VertexAlgebra(par, gb, namer=text, latex_namer=latex)

    @cached_property
    def B0_table(self):
        """B_0(a,b) = k(a|b) + (kappa - kappa_0)(a,b)/2 on g_0 basis pairs."""
        S0 = self.grading.S_zero
        out = {}
        for a in S0:
            for b in S0:
                ea, eb = self.e(a), self.e(b)
                v = K * self.form(ea, eb) + (self.kappa(ea, eb) - self.kappa(ea, eb, 0)) / 2
                if v:
                    out[(a, b)] = v
        return out

    @cached_property
    def bar_engine(self) -> VertexAlgebra:
        """V^{B0}(g_0) x F^ne, generators Current(i in S_0) and NeutralPhi."""
        alg, gr = self.alg, self.grading
        par = {(CURRENT, i): alg.parity[i] for i in gr.S_zero}
        for i in gr.S_half:
            par[(NEUTRAL, i)] = alg.parity[i]
        B0 = self.B0_table

        def gb(g, h):
            if g.kind == CURRENT and h.kind == CURRENT:
                out = {}
                terms = alg.bracket_basis(g.index, h.index)
                if terms:
                    out[0] = [((CURRENT, t), c) for t, c in terms.items()]
                c = B0.get((g.index, h.index))
                if c:
                    out[1] = [(None, c)]
                return out
            if g.kind == NEUTRAL and h.kind == NEUTRAL:
                c = neutral_form(alg, g.index, h.index)
                return {0: [(None, c)]} if c else {}
            return {}

        text, latex = self._names()
        return VertexAlgebra(par, gb, namer=text, latex_namer=latex)

    # ------------------------------------------------------------------
    # linear generators from vectors of g
    def current(self, v) -> VAExpr:
        return VAExpr({((CURRENT, i, 0),): scalar(c) for i, c in enumerate(v) if c})

    def phi(self, v) -> VAExpr:
        """phi_u built from p_{>0} u."""
        return VAExpr({((PHI, i, 0),): scalar(v[i]) for i in self.grading.S_pos if v[i]})

    def phi_up(self, i, n=0) -> VAExpr:
        return VAExpr({((PHI_UP, i, n),): ONE})

    def Phi(self, v, n=0) -> VAExpr:
        """Phi_u built from p_{1/2} u."""
        return VAExpr({((NEUTRAL, i, n),): scalar(v[i]) for i in self.grading.S_half if v[i]})

    def Phi_up(self, i, n=0) -> VAExpr:
        """Phi^i as a combination of the Phi_l."""
        return VAExpr({((NEUTRAL, l, n),): scalar(c) for l, c in self.duals.neutral_dual[i].items()})

    def dual(self, i):
        return self.duals.dual[i]
