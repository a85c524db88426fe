"""Backlund x-equation as an ODE: numeric partner-solution generator.

Given a seed solution u and defect parameters, integrate

    qt_x = q_x + 2i*(qt*a4 - q*a1),      Omega_x = 2*(qt*a3 - r*a2)

in x (the radical is carried as a state variable, so no square-root branch
tracking is needed; its consistency with the radicand is monitored and a
sign change of the radicand with eps = -1 is reported as a blow-up).  This
is the fallback generator and a cross-check; the built-in scenarios use
closed-form partners.
"""

from __future__ import annotations

import math
from typing import Optional, Sequence, Tuple

import numpy as np

from ..defects import DefectSpec
from ..errors import BlowUpError
from ..models import ModelSpec
from ..scenarios.fields import SideField


def _slot_values(m: ModelSpec, u: complex, qt: complex):
    """(q, r, rt) slot values given the seed sample and the tilde unknown."""
    eps = m.epsilon
    if m.reduction_class == "I":
        return u, eps * u.conjugate(), eps * qt.conjugate()
    if m.reduction_class == "II":
        return u, eps * u, eps * qt
    # class III: slots are the twisted fields
    return u, complex(eps), complex(-eps)


def backlund_solve_x(
    m: ModelSpec,
    d: DefectSpec,
    seed: SideField,
    t: float,
    xs: Sequence[float],
    qt0: complex,
    omega0: complex,
) -> Tuple[np.ndarray, np.ndarray]:
    """Integrate the Backlund x-equations along `xs` (uniform, ascending).

    `qt0`/`omega0` seed the tilde slot variable and the radical at xs[0]
    (for a vacuum seed use the closed-form asymptotic tail: the vacuum
    itself is a fixed point).  Returns (qt values, Omega values) on `xs`;
    for class III the physical partner is u~ = -qt.
    """
    xs = np.asarray(xs, dtype=float)
    h = xs[1] - xs[0]
    alpha_plus = complex(d.alpha_plus)
    params = d.param_values()
    am2 = params["alpha_minus"] ** 2

    def rhs(x: float, qt: complex, om: complex):
        u = seed.u_value(x, t)
        ux = seed.u_derivs(x, t, 1)[1]
        q, r, rt = _slot_values(m, u, qt)
        a1 = 0.5 * (alpha_plus + om)
        a4 = 0.5 * (alpha_plus - om)
        a2 = -0.5j * (qt - q)
        a3 = 0.5j * (rt - r)
        if m.reduction_class == "III":
            qx = -ux  # slot q~ carries the twisted field
            dqt = qx + 2j * (qt * a4 - q * a1)
        else:
            dqt = ux + 2j * (qt * a4 - q * a1)
        dom = 2.0 * (qt * a3 - r * a2)
        return dqt, dom

    qts = np.empty(len(xs), dtype=complex)
    oms = np.empty(len(xs), dtype=complex)
    qt, om = complex(qt0), complex(omega0)
    qts[0], oms[0] = qt, om
    for i in range(len(xs) - 1):
        x = xs[i]
        k1q, k1o = rhs(x, qt, om)
        k2q, k2o = rhs(x + h / 2, qt + h / 2 * k1q, om + h / 2 * k1o)
        k3q, k3o = rhs(x + h / 2, qt + h / 2 * k2q, om + h / 2 * k2o)
        k4q, k4o = rhs(x + h, qt + h * k3q, om + h * k3o)
        qt = qt + (h / 6) * (k1q + 2 * k2q + 2 * k3q + k4q)
        om = om + (h / 6) * (k1o + 2 * k2o + 2 * k3o + k4o)
        if not (math.isfinite(qt.real) and math.isfinite(om.real)):
            raise BlowUpError(f"Backlund integration diverged near x = {x:.3f}")
        # consistency of the carried radical with the radicand
        u = seed.u_value(xs[i + 1], t)
        q, r, rt = _slot_values(m, u, qt)
        radicand = am2 - (qt - q) * (rt - r)
        if abs(om * om - radicand) > 1e-6 * max(1.0, abs(radicand)):
            raise BlowUpError(
                f"radical lost consistency near x = {xs[i + 1]:.3f} "
                f"(radicand {radicand:.3e}); the transformation bound was hit"
            )
        qts[i + 1], oms[i + 1] = qt, om
    return qts, oms
