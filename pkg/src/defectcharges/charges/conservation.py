"""Bulk conservation: densities q*Gamma_n, fluxes from B*Gamma + A.

For a lambda-polynomial AKNS model the conservation law reads, order by
order in (2 i lambda)^-n,

    D_t(q Gamma_n) = D_x(flux_n),   flux_n = (2i)^n * [B Gamma + A]_{lambda^-n},

and for the Kaup-Newell scheme the flux series carries an extra 1/lambda.
Light-cone models route through the closure ring.
"""

from __future__ import annotations

from typing import List, Optional, Union

from .. import lightcone
from ..algebra.calculus import total_t_derivative
from ..algebra.numbers import gr
from ..algebra.polynomial import DiffPolynomial, gen
from ..errors import OrderUnavailableError
from ..models import ModelSpec, apply_reduction
from ..series import LaurentSeries
from .gamma import gamma_expand_akns, gamma_expand_kn, gamma_series

_2I = gr(0, 2)


def gammas_for(m: ModelSpec, n_max: int) -> List[DiffPolynomial]:
    if m.scheme == "AKNS":
        return gamma_expand_akns(n_max)
    return gamma_expand_kn(n_max)


def bulk_density(m: ModelSpec, n: int, gammas=None) -> DiffPolynomial:
    """q*Gamma_n in the general ring (paper normalization)."""
    if m.scheme == "AKNS":
        gs = gammas if gammas is not None else gamma_expand_akns(n)
        if n < 1 or n > len(gs):
            raise OrderUnavailableError(f"order {n} not computed")
        return gen("q") * gs[n - 1]
    gs = gammas if gammas is not None else gamma_expand_kn(n)
    if n < 0 or n > len(gs) - 1:
        raise OrderUnavailableError(f"order {n} not computed")
    return gen("q") * gs[n]


def flux(m: ModelSpec, n: int) -> DiffPolynomial:
    """Paper-normalized flux at order n (lambda-polynomial models only)."""
    if m.v_matrix is None:
        raise OrderUnavailableError("use the closure ring for light-cone fluxes")
    if m.scheme == "AKNS":
        gs = gamma_expand_akns(n + 3)
        gam = gamma_series(m, gs)
        f = m.v_matrix[0, 1] * gam + m.v_matrix[0, 0]
        return f.coeff(-n).scale(_2I**n)
    gs = gamma_expand_kn(n + 2)
    gam = gamma_series(m, gs)
    f = (m.v_matrix[0, 1] * gam + m.v_matrix[0, 0]).shift(-1)
    e = 2 * n + 1
    return f.coeff(-e).scale(_2I**e)


def conservation_residual(
    m: ModelSpec, n: int
) -> Union[DiffPolynomial, lightcone.ClosurePoly]:
    """D_t(q Gamma_n) - D_x(flux_n); the zero polynomial for every model.

    For class III the identity is checked in reduced form as well as held
    generally; callers may reduce the returned polynomial themselves.
    """
    if m.lightcone:
        gs = gamma_expand_akns(max(n, 1))
        gamma_n = apply_reduction(m, gs[n - 1])
        gamma_prev = (
            apply_reduction(m, gs[n - 2]) if n >= 2 else DiffPolynomial(())
        )
        return lightcone.bulk_conservation_residual(
            m.lightcone_data, gamma_n, gamma_prev, n
        )
    density = bulk_density(m, n)
    lhs = total_t_derivative(density, m.eom)
    return lhs - flux(m, n).dx()
