"""Closed-form exact solutions used as scenario sides.

Every field implements `u_formula(x, t)` with jet-capable arithmetic in
either argument, giving analytic x-derivatives of any order and analytic
t-derivatives.  Light-cone fields also expose the underlying field v.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

from . import jets as J
from .jets import Jet

Arg = Union[float, complex, Jet]


class SideField:
    """Base interface for one region's exact solution."""

    is_lightcone = False

    def u_formula(self, x: Arg, t: Arg):
        raise NotImplementedError

    def v_formula(self, x: Arg, t: Arg):
        raise NotImplementedError

    # -- derived samplers ---------------------------------------------------

    def u_derivs(self, x: float, t: float, order: int) -> Tuple[complex, ...]:
        out = self.u_formula(Jet.variable(x, order), t)
        if isinstance(out, Jet):
            return out.derivatives()
        return (complex(out),) + (0j,) * order

    def u_t(self, x: float, t: float) -> complex:
        out = self.u_formula(x, Jet.variable(t, 1))
        if isinstance(out, Jet):
            return out.derivatives()[1]
        return 0j

    def u_value(self, x: float, t: float) -> complex:
        out = self.u_formula(x, t)
        return out.value if isinstance(out, Jet) else complex(out)

    def v_value(self, x: float, t: float) -> complex:
        out = self.v_formula(x, t)
        return out.value if isinstance(out, Jet) else complex(out)

    def v_t(self, x: float, t: float) -> complex:
        out = self.v_formula(x, Jet.variable(t, 1))
        return out.derivatives()[1] if isinstance(out, Jet) else 0j


@dataclass
class Vacuum(SideField):
    """The zero solution (vacuum on one side of the defect)."""

    lightcone: bool = False

    @property
    def is_lightcone(self):
        return self.lightcone

    def u_formula(self, x: Arg, t: Arg):
        return 0.0

    def v_formula(self, x: Arg, t: Arg):
        return 0.0


@dataclass
class NLSBrightSoliton(SideField):
    """u = a sech(a(x - 2bt - x0)) exp(i(bx + (a^2 - b^2)t + phase)).

    Solves i u_t + u_xx + 2|u|^2 u = 0 (the focusing normalization used by
    the registered NLS model).
    """

    a: float
    b: float
    x0: float
    phase: float = 0.0

    def u_formula(self, x: Arg, t: Arg):
        arg = (x - 2.0 * self.b * t - self.x0) * self.a
        phi = self.b * x + (self.a**2 - self.b**2) * t + self.phase
        if not isinstance(arg, Jet) and not isinstance(phi, Jet):
            return (
                self.a
                / math.cosh(arg)
                * complex(math.cos(phi.real), math.sin(phi.real))
                if abs(arg) < 700
                else 0j
            )
        arg = arg if isinstance(arg, Jet) else Jet.constant(arg, 0)
        n = arg.order if isinstance(arg, Jet) else phi.order
        if not isinstance(phi, Jet):
            phi = Jet.constant(phi, n)
        return self.a * J.sech(arg) * J.exp(1j * phi)


@dataclass
class MKdVSoliton(SideField):
    """u = k sech(k(x - k^2 t - x0)); solves u_t + 6u^2 u_x + u_xxx = 0
    (mkdv-minus, eps = -1)."""

    k: float
    x0: float

    def u_formula(self, x: Arg, t: Arg):
        arg = (x - self.k**2 * t - self.x0) * self.k
        if not isinstance(arg, Jet):
            return self.k / math.cosh(arg)
        return self.k * J.sech(arg)


@dataclass
class KdVSoliton(SideField):
    """u = -2 eps k^2 sech^2(k(x - 4k^2 t - x0)); solves
    u_t - 6 eps u u_x + u_xxx = 0."""

    k: float
    x0: float
    epsilon: int = 1

    def u_formula(self, x: Arg, t: Arg):
        arg = (x - 4.0 * self.k**2 * t - self.x0) * self.k
        c = -2.0 * self.epsilon * self.k**2
        if not isinstance(arg, Jet):
            return c / math.cosh(arg) ** 2
        s = J.sech(arg)
        return c * s * s


@dataclass
class SGKink(SideField):
    """Light-cone kink v = 4 atan(exp(a(x - x1) + t/a)), u = -v_x/2 = -a sech."""

    a: float
    x1: float
    is_lightcone = True

    def _theta(self, x: Arg, t: Arg):
        return self.a * (x - self.x1) + t / self.a

    def u_formula(self, x: Arg, t: Arg):
        th = self._theta(x, t)
        if not isinstance(th, Jet):
            return -self.a / math.cosh(th)
        return -self.a * J.sech(th)

    def v_formula(self, x: Arg, t: Arg):
        th = self._theta(x, t)
        if not isinstance(th, Jet):
            return 4.0 * math.atan(math.exp(th)) if th < 700 else 2.0 * math.pi
        return 4.0 * J.atan(J.exp(th))


@dataclass
class SGTwoKink(SideField):
    """Nonlinear superposition of two kinks (Bianchi permutability):

        tan(v/4) = mu * (e^t1 - e^t2) / (1 + e^(t1+t2)),
        mu = (a1 + a2)/(a1 - a2),

    the Backlund transform with parameter a2 of the a1 kink (and vice versa).
    """

    a1: float
    a2: float
    x1: float
    x2: float
    is_lightcone = True

    def _exps(self, x: Arg, t: Arg):
        th1 = self.a1 * (x - self.x1) + t * (1.0 / self.a1)
        th2 = self.a2 * (x - self.x2) + t * (1.0 / self.a2)
        if isinstance(th1, Jet):
            return J.exp(th1), J.exp(th2)
        return math.exp(th1), math.exp(th2)

    def _g_and_gx(self, x: Arg, t: Arg):
        """(G, dG/dx) from the explicit formula; e_i' = a_i e_i in x."""
        e1, e2 = self._exps(x, t)
        mu = (self.a1 + self.a2) / (self.a1 - self.a2)
        numer = e1 - e2
        denom = 1.0 + e1 * e2
        g = mu * numer / denom
        dnumer = self.a1 * e1 - self.a2 * e2
        ddenom = (self.a1 + self.a2) * e1 * e2
        gx = mu * (dnumer * denom - numer * ddenom) / (denom * denom)
        return g, gx

    def v_formula(self, x: Arg, t: Arg):
        g, _ = self._g_and_gx(x, t)
        if not isinstance(g, Jet):
            return 4.0 * math.atan(g)
        return 4.0 * J.atan(g)

    def u_formula(self, x: Arg, t: Arg):
        # u = -v_x/2 = -2 G_x / (1 + G^2)
        g, gx = self._g_and_gx(x, t)
        return -2.0 * gx / (1.0 + g * g)


@dataclass
class LiouvilleSolution(SideField):
    """v = ln(phi' psi') - 2 ln(phi + psi) with phi = e^x + shift, psi = s0*t + t0.

    v_xt = 2 e^v for any shift; pairs with different shifts are Backlund
    related with gamma = 2*(shift_left - shift_right)/s0.
    """

    shift: float
    s0: float = 1.0
    t_offset: float = 1.0
    is_lightcone = True

    def v_formula(self, x: Arg, t: Arg):
        ex = J.exp(x) if isinstance(x, Jet) else math.exp(x)
        psi = self.s0 * t + self.t_offset
        denom = ex + self.shift + psi
        lnden = J.log(denom) if isinstance(denom, Jet) else math.log(denom)
        return x + math.log(self.s0) - 2.0 * lnden

    def u_formula(self, x: Arg, t: Arg):
        # u = v_x/2 = 1/2 - e^x/(e^x + shift + psi)
        ex = J.exp(x) if isinstance(x, Jet) else math.exp(x)
        psi = self.s0 * t + self.t_offset
        return 0.5 - ex / (ex + self.shift + psi)
