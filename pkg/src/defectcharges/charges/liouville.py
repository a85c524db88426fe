"""Liouville's modified generating function: explicit boundary corrections.

Without decaying fields the flux does not vanish at the domain edges; since
A = C = -B for Liouville, B*Gamma + A = -d/dt ln(1 - Gamma), and the bulk
pieces acquire the corrections

    right: + ln(1 - Gamma)  evaluated at the right edge,
    left:  - ln(1 - Gamma~) evaluated at the left edge,

order by order in (2 i lambda)^-n.  This module produces those coefficient
polynomials; the harness evaluates them with edge field samples.
"""

from __future__ import annotations

from typing import Dict

from ..algebra.numbers import gr
from ..algebra.polynomial import DiffPolynomial
from ..errors import WrongModelError
from ..models import ModelSpec, apply_reduction
from ..series import one_series
from .gamma import gamma_expand_akns, gamma_series

_2I = gr(0, 2)


def boundary_coefficients(m: ModelSpec, order: int) -> Dict[int, DiffPolynomial]:
    """b_n = (2i)^n * [ln(1 - Gamma)]_{lambda^-n}, reduced to the q family.

    The right-edge correction is +b_n on right-side samples; the left-edge
    correction is -b_n on left-side samples (same polynomial, tilde data).
    """
    if m.name != "liouville":
        raise WrongModelError("boundary corrections are specific to Liouville")
    gammas = gamma_expand_akns(order + 1)
    gam = gamma_series(m, gammas)
    ln = (one_series() - gam).log(order)
    return {
        n: apply_reduction(m, ln.coeff(-n).scale(_2I**n))
        for n in range(1, order + 1)
    }
