"""Riccati expansion coefficients Gamma_n for both schemes.

AKNS:  Gamma = sum_{n>=1} Gamma_n / (2 i lambda)^n,
       Gamma_1 = -r,  Gamma_{n+1} = Gamma_n' + q * sum_{k=1}^{n-1} Gamma_k Gamma_{n-k}.

Kaup-Newell: Gamma = sum_{n>=0} Gamma_n / (2 i lambda)^{2n+1},
       Gamma_0 = -r,  Gamma_{n+1} = 2i Gamma_n' + q * sum_{p=0}^{n} Gamma_p Gamma_{n-p}.

Series are stored with plain integer lambda exponents; the (2i)^n weights are
absorbed in the coefficients, and `paper_coefficient` undoes them.
"""

from __future__ import annotations

from typing import Dict, List

from ..algebra.calculus import total_t_derivative
from ..algebra.numbers import gr
from ..algebra.polynomial import DiffPolynomial, ZERO, gen
from ..errors import WrongClassError
from ..models import ModelSpec
from ..series import LaurentSeries, monomial_series

_2I = gr(0, 2)


def gamma_expand_akns(n_max: int) -> List[DiffPolynomial]:
    """[Gamma_1 .. Gamma_n_max]; the recursion is model independent."""
    if n_max < 1:
        return []
    q = gen("q")
    gammas = [-gen("r")]
    for n in range(1, n_max):
        nxt = gammas[n - 1].dx()
        acc = ZERO
        for k in range(1, n):
            acc = acc + gammas[k - 1] * gammas[n - k - 1]
        gammas.append(nxt + q * acc)
    return gammas


def gamma_expand_kn(n_max: int) -> List[DiffPolynomial]:
    """[Gamma_0 .. Gamma_n_max] for the Kaup-Newell scheme."""
    q = gen("q")
    gammas = [-gen("r")]
    for n in range(0, n_max):
        acc = ZERO
        for p in range(0, n + 1):
            acc = acc + gammas[p] * gammas[n - p]
        gammas.append(gammas[n].dx().scale(_2I) + q * acc)
    return gammas


def gamma_series(m: ModelSpec, gammas: List[DiffPolynomial]) -> LaurentSeries:
    """Assemble the truncated Gamma series with absorbed (2i)^n weights."""
    coeffs: Dict[int, DiffPolynomial] = {}
    if m.scheme == "AKNS":
        for idx, g in enumerate(gammas):
            n = idx + 1
            coeffs[-n] = g.scale(_2I ** (-n))
        floor = -len(gammas)
    elif m.scheme == "KN":
        for idx, g in enumerate(gammas):
            e = 2 * idx + 1
            coeffs[-e] = g.scale(_2I ** (-e))
        floor = -(2 * (len(gammas) - 1) + 1)
    else:
        raise WrongClassError(f"unknown scheme {m.scheme}")
    return LaurentSeries.from_dict(coeffs, floor)


def paper_coefficient(series: LaurentSeries, n: int) -> DiffPolynomial:
    """Coefficient of (2 i lambda)^-n, i.e. stored coefficient times (2i)^n."""
    return series.coeff(-n).scale(_2I**n)


def riccati_residual_x(m: ModelSpec, gam: LaurentSeries) -> LaurentSeries:
    """AKNS: Gamma' - 2i*lambda*Gamma - r + q*Gamma^2 (KN analogue likewise)."""
    q, r = gen("q"), gen("r")
    if m.scheme == "AKNS":
        res = (
            gam.dx()
            - gam.shift(1).scale(_2I)
            - monomial_series(0, r)
            + (gam * gam).scale_poly(q)
        )
    else:
        res = (
            gam.dx()
            - monomial_series(1, r)
            - gam.shift(2).scale(_2I)
            + (gam * gam).shift(1).scale_poly(q)
        )
    return res


def riccati_residual_t(m: ModelSpec, gam: LaurentSeries) -> LaurentSeries:
    """Gamma_t - (C - 2*A*Gamma - B*Gamma^2), eom-substituted; exact.

    Needs the polynomial V matrix, so light-cone models are excluded.
    """
    if m.v_matrix is None:
        raise WrongClassError("no polynomial V matrix for light-cone models")
    a = m.v_matrix[0, 0]
    b = m.v_matrix[0, 1]
    c = m.v_matrix[1, 0]
    gam_t = gam.map(lambda p: total_t_derivative(p, m.eom))
    return gam_t - c + (a * gam).scale(2) + b * gam * gam
