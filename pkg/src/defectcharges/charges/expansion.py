"""Defect contribution -ln(L11 + L12*Gamma) and its normal forms.

`defect_coefficients` expands the log in the general ring (Omega-bearing
coefficients); `symmetrize` builds the real class-I combination
i*(I(lambda) - I*(lambda*)) order by order; `OnshellReducer` eliminates
tilde-field x-derivatives using the Backlund x-equations, which turns the raw
coefficients (plus integration-by-parts boundary corrections) into the
derivative-free displayed forms; `match_constant` pins the model-dependent
normalization kappa_n by proportionality against a reference density.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional, Tuple

from ..algebra.calculus import euler_operator, dx_antiderivative
from ..algebra.numbers import GaussianRational, gr
from ..algebra.polynomial import (
    FIELD_BASES,
    DiffPolynomial,
    ONE,
    ZERO,
    const,
    gen,
    param,
)
from ..defects import DefectSpec, defect_entries, build_defect_matrix
from ..errors import WrongClassError
from ..models import ModelSpec, reduction_conjugate
from ..series import LaurentSeries
from .gamma import gamma_expand_akns, gamma_series

_2I = gr(0, 2)
_I = gr(0, 1)


def defect_log_series(
    m: ModelSpec, d: DefectSpec, order: int
) -> LaurentSeries:
    """-ln(L11 + L12*Gamma) truncated at lambda^-order, general ring."""
    gammas = gamma_expand_akns(order + 1)
    gam = gamma_series(m, gammas)
    L = build_defect_matrix(d)
    z = L[0, 0] + L[0, 1] * gam
    return z.log(order).scale(gr(-1))


def defect_coefficients(
    m: ModelSpec, d: DefectSpec, order: int
) -> Dict[int, DiffPolynomial]:
    """Paper-normalized D_n: coefficient of (2 i lambda)^-n of the log."""
    ser = defect_log_series(m, d, order)
    return {n: ser.coeff(-n).scale(_2I**n) for n in range(1, order + 1)}


def symmetrize(p: DiffPolynomial, n: int, epsilon: int) -> DiffPolynomial:
    """i * (c_n - (-1)^n * conj(c_n)) with the class-I conjugation map."""
    sign = gr((-1) ** n)
    return (p - reduction_conjugate(p, epsilon).scale(sign)).scale(_I)


def match_constant(
    reference: DiffPolynomial,
    candidate: DiffPolynomial,
    modulo_dx: bool = False,
) -> Optional[GaussianRational]:
    """kappa with reference = kappa * candidate (optionally modulo D_x).

    Returns None when the two are not proportional.  With modulo_dx the
    comparison runs on the Euler-operator images, which quotient out exact
    terms.
    """
    if modulo_dx:
        refs = [euler_operator(reference, b) for b in FIELD_BASES]
        cands = [euler_operator(candidate, b) for b in FIELD_BASES]
    else:
        refs, cands = [reference], [candidate]
    kappa: Optional[GaussianRational] = None
    for refp, candp in zip(refs, cands):
        cd = dict(candp.terms)
        rd = dict(refp.terms)
        for key, c in cd.items():
            r = rd.get(key)
            if r is None:
                return None
            k = r / c
            if kappa is None:
                kappa = k
            elif k != kappa:
                return None
    if kappa is None:
        return None
    # verify nothing in the reference is unmatched
    for refp, candp in zip(refs, cands):
        if not (refp - candp.scale(kappa)).is_zero:
            return None
    return kappa


class OnshellReducer:
    """Substitutes tilde-field x-derivatives via the Backlund x-equations.

    Rules (general ring, both classes; class III reads them on the twisted
    generators):

        qt_x -> q_x + 2i*(qt*a4 - q*a1)
        rt_x -> r_x - 2i*(rt*a1 - r*a4)

    Higher tilde derivatives use the on-shell derivative, where Omega gets
    Omega' = 2*(qt*a3 - r*a2) from the redundant a1 equation.  The class-I
    defect keeps alpha_plus; other classes zero it at reduction time.
    """

    def __init__(self, d: DefectSpec):
        a1, a2, a3, a4 = defect_entries(d)
        self._omega_x = (gen("qt") * a3 - gen("r") * a2).scale(2)
        self._rules: Dict[Tuple[str, int], DiffPolynomial] = {
            ("qt", 1): gen("q", 1) + (gen("qt") * a4 - gen("q") * a1).scale(_2I),
            ("rt", 1): gen("r", 1) - (gen("rt") * a1 - gen("r") * a4).scale(_2I),
        }

    def _onshell_dx(self, p: DiffPolynomial) -> DiffPolynomial:
        plain: Dict = {}
        radical = []
        for (fields, params, om), c in p.terms:
            if om:
                radical.append(((fields, params, 0), c))
            else:
                plain[(fields, params, 0)] = (
                    plain.get((fields, params, 0), gr(0)) + c
                )
        p0 = DiffPolynomial.from_dict(plain)
        acc: Dict = {}
        for k, c in radical:
            acc[k] = acc.get(k, gr(0)) + c
        p1 = DiffPolynomial.from_dict(acc)
        out = p0.dx()
        if not p1.is_zero:
            om_gen = DiffPolynomial(((((), (), 1), gr(1)),))
            out = out + p1.dx() * om_gen + p1 * self._omega_x
        return out

    def rule(self, base: str, order: int) -> DiffPolynomial:
        key = (base, order)
        if key not in self._rules:
            lower = self.rule(base, order - 1)
            raised = self._onshell_dx(lower)
            self._rules[key] = self.reduce(raised)
        return self._rules[key]

    def reduce(self, p: DiffPolynomial) -> DiffPolynomial:
        """Eliminate every qt/rt derivative of order >= 1."""
        for _ in range(100):
            target = None
            for (fields, _params, _om), _c in p.terms:
                for (b, o), _pw in fields:
                    if b in ("qt", "rt") and o >= 1:
                        if target is None or o > target[1]:
                            target = (b, o)
            if target is None:
                return p
            b, o = target
            p = _substitute_generator(p, b, o, self.rule(b, o))
        raise RuntimeError("on-shell reduction did not terminate")


def _substitute_generator(
    p: DiffPolynomial, base: str, order: int, replacement: DiffPolynomial
) -> DiffPolynomial:
    out = ZERO
    for (fields, params, om), c in p.terms:
        pw = dict(fields).get((base, order), 0)
        if pw == 0:
            out = out + DiffPolynomial((((fields, params, om), c),))
            continue
        rest = tuple(it for it in fields if it[0] != (base, order))
        mono = DiffPolynomial((((rest, params, om), c),))
        out = out + mono * replacement**pw
    return out


def bulk_correction(
    reference_density: DiffPolynomial, normalized_density: DiffPolynomial
) -> DiffPolynomial:
    """h with reference = normalized + D_x(h) (densities must differ by an
    exact term)."""
    return dx_antiderivative(reference_density - normalized_density)


def displayed_defect_candidate(
    d: DefectSpec,
    kappa: GaussianRational,
    raw_defect: DiffPolynomial,
    h_right: DiffPolynomial,
) -> DiffPolynomial:
    """kappa*raw + h(x0) - h~(x0), on-shell reduced.

    `h_right` is the right-side integration-by-parts antiderivative in plain
    generators; the tilde side uses the same polynomial on tilde generators.
    """
    candidate = raw_defect.scale(kappa) + h_right - h_right.tilde_swap()
    return OnshellReducer(d).reduce(candidate)


def field_free_difference(a: DiffPolynomial, b: DiffPolynomial) -> Optional[DiffPolynomial]:
    """The constant (field-free) polynomial a - b, or None if field terms
    survive."""
    diff = a - b
    if (diff - diff.field_free_part()).is_zero:
        return diff
    return None
