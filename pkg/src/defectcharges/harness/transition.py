"""Transition matrices and the defect-dressed monodromy.

T(x, y, lambda) is the fundamental solution of the x-part, integrated with a
fixed-step RK4 scheme; the defect-dressed transition matrix for x < x0 < y is

    T(x0, y) * L^-1(x0, t) * T~(x, x0),

whose time evolution d/dt = V(y) * . - . * V~(x) is verified by central
differences in t.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np

from ..defects import DefectSpec, build_defect_matrix
from ..errors import StepSizeTooCoarseError
from ..models import ModelSpec
from ..scenarios.builtin import Scenario
from ..scenarios.fields import SideField

Mat = np.ndarray


def qr_values(m: ModelSpec, f: SideField, x: float, t: float, twisted: bool):
    u = f.u_value(x, t)
    eps = m.epsilon
    if m.reduction_class == "I":
        q, r = u, eps * u.conjugate()
    elif m.reduction_class == "II":
        q, r = u, eps * u
    else:
        q, r = u, complex(eps)
    if twisted:
        q, r = -q, -r
    return q, r


def u_matrix_numeric(
    m: ModelSpec, f: SideField, x: float, t: float, lam: complex, twisted: bool
) -> Mat:
    q, r = qr_values(m, f, x, t, twisted)
    if m.scheme == "KN":
        return np.array(
            [[-1j * lam**2, lam * q], [lam * r, 1j * lam**2]], dtype=complex
        )
    return np.array([[-1j * lam, q], [r, 1j * lam]], dtype=complex)


def v_matrix_numeric(
    m: ModelSpec, f: SideField, x: float, t: float, lam: complex, twisted: bool
) -> Mat:
    """V(x, t, lambda) on one region's field."""
    if m.lightcone:
        v = f.v_value(x, t)
        if m.name == "sg":
            c, s = cmath.cos(v), cmath.sin(v)
            base = np.array([[c, s], [s, -c]], dtype=complex)
            return (0.25j / lam) * base
        e = cmath.exp(v)
        base = np.array([[1.0, -1.0], [1.0, -1.0]], dtype=complex)
        return (0.5j * e / lam) * base
    order = max(2, m.v_matrix[0, 1].coeff(0).max_order())
    derivs = f.u_derivs(x, t, order)
    eps = m.epsilon
    bind = {}
    for k, val in enumerate(derivs):
        if m.reduction_class == "I":
            q, r = val, eps * val.conjugate()
        elif m.reduction_class == "II":
            q, r = val, eps * val
        else:
            q, r = val, (complex(eps) if k == 0 else 0j)
        if twisted:
            q, r = -q, -r
        bind[("q", k)] = q
        bind[("r", k)] = r
    vals = m.v_matrix.evaluate(lam, bind)
    return np.array(vals, dtype=complex)


def transition_matrix(
    m: ModelSpec,
    f: SideField,
    t: float,
    x_from: float,
    x_to: float,
    lam: complex,
    h: float = 0.005,
    twisted: bool = False,
    error_estimate: bool = False,
    tolerance: Optional[float] = None,
) -> Tuple[Mat, Optional[float]]:
    """Integrate dT/dy = U(y) T from x_from to x_to, T(start) = identity."""

    def rhs(y: float, tm: Mat) -> Mat:
        return u_matrix_numeric(m, f, y, t, lam, twisted) @ tm

    def integrate(step: float) -> Mat:
        n = max(1, round((x_to - x_from) / step))
        hh = (x_to - x_from) / n
        tm = np.eye(2, dtype=complex)
        y = x_from
        for _ in range(n):
            k1 = rhs(y, tm)
            k2 = rhs(y + hh / 2, tm + hh / 2 * k1)
            k3 = rhs(y + hh / 2, tm + hh / 2 * k2)
            k4 = rhs(y + hh, tm + hh * k3)
            tm = tm + (hh / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
            y += hh
        return tm

    tm = integrate(h)
    err = None
    if error_estimate or tolerance is not None:
        tm2 = integrate(h / 2)
        err = float(np.linalg.norm(tm - tm2)) / 15.0
        tm = tm2
        if tolerance is not None and err > tolerance:
            raise StepSizeTooCoarseError(
                f"estimated transition error {err:.2e} > {tolerance:.1e}"
            )
    return tm, err


@dataclass
class MonodromyResult:
    lam: complex
    t: float
    x: float
    y: float
    composite: Mat
    t_right: Mat
    t_left: Mat
    l_inverse: Mat
    evolution_residual: Optional[float] = None

    @property
    def det_identity_error(self) -> float:
        lhs = np.linalg.det(self.composite)
        rhs = (
            np.linalg.det(self.t_right)
            * np.linalg.det(self.l_inverse)
            * np.linalg.det(self.t_left)
        )
        return abs(lhs - rhs)


def defect_l_matrix(
    scenario: Scenario, k: int, t: float, lam: complex
) -> Mat:
    d = scenario.defects[k]
    bind = scenario.pair_bindings(k, d.x0, t, order=1)
    om = scenario.omega_fns[k](d.x0, t)
    L = build_defect_matrix(d)
    vals = L.evaluate(lam, bind, d.param_values(), omega_value=om)
    return np.array(vals, dtype=complex)


def dressed_transition(
    scenario: Scenario,
    lam: complex,
    t: float,
    x: float,
    y: float,
    h: float = 0.005,
) -> MonodromyResult:
    """T(x0,y) L^-1 T~(x,x0) for a single-defect scenario."""
    m = scenario.model
    d = scenario.defects[0]
    left, right = scenario.pair(0)
    tw = d.defect_class == "III"
    t_right, _ = transition_matrix(m, right, t, d.x0, y, lam, h)
    t_left, _ = transition_matrix(m, left, t, x, d.x0, lam, h, twisted=tw)
    l_mat = defect_l_matrix(scenario, 0, t, lam)
    l_inv = np.linalg.inv(l_mat)
    return MonodromyResult(
        lam=lam,
        t=t,
        x=x,
        y=y,
        composite=t_right @ l_inv @ t_left,
        t_right=t_right,
        t_left=t_left,
        l_inverse=l_inv,
    )


def evolution_residual(
    scenario: Scenario,
    lam: complex,
    t: float,
    x: float,
    y: float,
    dt: float,
    h: float = 0.005,
) -> float:
    """|| d/dt Tx0 - (V(y) Tx0 - Tx0 V~(x)) || with a central difference."""
    m = scenario.model
    d = scenario.defects[0]
    left, right = scenario.pair(0)
    tw = d.defect_class == "III"
    center = dressed_transition(scenario, lam, t, x, y, h).composite
    plus = dressed_transition(scenario, lam, t + dt, x, y, h).composite
    minus = dressed_transition(scenario, lam, t - dt, x, y, h).composite
    fd = (plus - minus) / (2 * dt)
    vy = v_matrix_numeric(m, right, y, t, lam, False)
    vx = v_matrix_numeric(m, left, x, t, lam, tw)
    return float(np.linalg.norm(fd - (vy @ center - center @ vx)))
