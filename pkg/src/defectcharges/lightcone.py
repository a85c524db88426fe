"""Exact closure ring for the light-cone models.

cos v, sin v and e^v are not elements of the main differential ring, but the
light-cone zero-curvature and conservation identities close on the finite
generator set {u-derivatives, c=cos v, s=sin v, E=e^v} with derivative tables

    sine-Gordon (u = -v_x/2):  c_x = 2 u s,   s_x = -2 u c,   u_t = -s/2
    Liouville   (u = +v_x/2):  E_x = 2 u E,                   u_t = E

and the algebraic rewrite s^2 -> 1 - c^2.  This module provides just enough
exact polynomial arithmetic over those generators to verify the identities;
it is internal to the model layer, not a general trig extension of the ring.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Tuple

from .algebra.numbers import GaussianRational, gr
from .algebra.polynomial import DiffPolynomial

# term key: (ufields, c_pow, s_pow, e_pow); ufields = tuple of (order, power)
UKey = Tuple[Tuple[Tuple[int, int], ...], int, int, int]


def _rat(num: int, den: int = 1) -> GaussianRational:
    return GaussianRational(Fraction(num, den), Fraction(0))


def _imag(num: int, den: int = 1) -> GaussianRational:
    return GaussianRational(Fraction(0), Fraction(num, den))


def _norm_ufields(items) -> Tuple[Tuple[int, int], ...]:
    acc: Dict[int, int] = {}
    for o, p in items:
        if p:
            acc[o] = acc.get(o, 0) + p
    return tuple(sorted((o, p) for o, p in acc.items() if p))


@dataclass(frozen=True)
class ClosurePoly:
    terms: Tuple[Tuple[UKey, GaussianRational], ...]

    @staticmethod
    def from_dict(d: Mapping[UKey, GaussianRational]) -> "ClosurePoly":
        items = [(k, c) for k, c in d.items() if not c.is_zero]
        items.sort(key=lambda kc: kc[0])
        return ClosurePoly(tuple(items))

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "ClosurePoly") -> "ClosurePoly":
        acc = dict(self.terms)
        for k, c in other.terms:
            v = acc.get(k)
            acc[k] = c if v is None else v + c
        return ClosurePoly.from_dict(acc)

    def __sub__(self, other: "ClosurePoly") -> "ClosurePoly":
        return self + other.scale(gr(-1))

    def scale(self, c: GaussianRational) -> "ClosurePoly":
        return ClosurePoly(tuple((k, co * c) for k, co in self.terms))

    def __mul__(self, other: "ClosurePoly") -> "ClosurePoly":
        acc: Dict[UKey, GaussianRational] = {}
        pending = []
        for (f1, c1, s1, e1), co1 in self.terms:
            for (f2, c2, s2, e2), co2 in other.terms:
                key = (_norm_ufields(f1 + f2), c1 + c2, s1 + s2, e1 + e2)
                co = co1 * co2
                if key[2] < 2:
                    v = acc.get(key)
                    acc[key] = co if v is None else v + co
                else:
                    pending.append((key, co))
        out = ClosurePoly.from_dict(acc)
        for (f, cp, sp, ep), co in pending:
            m, rem = divmod(sp, 2)
            factor = ONE_C
            base = ONE_C - _cgen(2)
            for _ in range(m):
                factor = factor * base
            mono = ClosurePoly((((f, cp, rem, ep), co),))
            out = out + mono * factor
        return out


def _cgen(p: int = 1) -> ClosurePoly:
    return ClosurePoly(((((), p, 0, 0), gr(1)),))


def ugen(order: int = 0) -> ClosurePoly:
    return ClosurePoly((((((order, 1),), 0, 0, 0), gr(1)),))


ZERO_C = ClosurePoly(())
ONE_C = ClosurePoly(((((), 0, 0, 0), gr(1)),))
COS = _cgen()
SIN = ClosurePoly(((((), 0, 1, 0), gr(1)),))
EXP = ClosurePoly(((((), 0, 0, 1), gr(1)),))


@dataclass(frozen=True)
class ClosureRules:
    """Derivative tables for one light-cone model."""

    dx_c: ClosurePoly
    dx_s: ClosurePoly
    dx_e: ClosurePoly
    dt_u: ClosurePoly


SG_RULES = ClosureRules(
    dx_c=ugen().scale(gr(2)) * SIN,
    dx_s=ugen().scale(gr(-2)) * COS,
    dx_e=ZERO_C,
    dt_u=SIN.scale(_rat(-1, 2)),
)

LIOUVILLE_RULES = ClosureRules(
    dx_c=ZERO_C,
    dx_s=ZERO_C,
    dx_e=ugen().scale(gr(2)) * EXP,
    dt_u=EXP,
)


def dx(p: ClosurePoly, rules: ClosureRules) -> ClosurePoly:
    out = ZERO_C
    for (fields, cp, sp, ep), co in p.terms:
        for i, (o, pw) in enumerate(fields):
            items = list(fields)
            items[i] = (o, pw - 1)
            mono = ClosurePoly((((_norm_ufields(items), cp, sp, ep), co * gr(pw)),))
            out = out + mono * ugen(o + 1)
        if cp:
            mono = ClosurePoly((((fields, cp - 1, sp, ep), co * gr(cp)),))
            out = out + mono * rules.dx_c
        if sp:
            mono = ClosurePoly((((fields, cp, sp - 1, ep), co * gr(sp)),))
            out = out + mono * rules.dx_s
        if ep:
            mono = ClosurePoly((((fields, cp, sp, ep - 1), co * gr(ep)),))
            out = out + mono * rules.dx_e
    return out


def dt(p: ClosurePoly, rules: ClosureRules) -> ClosurePoly:
    """Total t-derivative; defined only for pure u-polynomials."""
    cache: Dict[int, ClosurePoly] = {}

    def dt_u(order: int) -> ClosurePoly:
        if order not in cache:
            out = rules.dt_u
            for _ in range(order):
                out = dx(out, rules)
            cache[order] = out
        return cache[order]

    out = ZERO_C
    for (fields, cp, sp, ep), co in p.terms:
        if cp or sp or ep:
            raise ValueError("dt is defined for u-polynomials only")
        for i, (o, pw) in enumerate(fields):
            items = list(fields)
            items[i] = (o, pw - 1)
            mono = ClosurePoly((((_norm_ufields(items), 0, 0, 0), co * gr(pw)),))
            out = out + mono * dt_u(o)
    return out


def from_q_polynomial(p: DiffPolynomial) -> ClosurePoly:
    """Map a main-ring polynomial in the q family alone onto u-generators."""
    acc: Dict[UKey, GaussianRational] = {}
    for (fields, params, om), c in p.terms:
        if params or om:
            raise ValueError("parameters/Omega have no closure-ring image")
        items = []
        for (b, o), pw in fields:
            if b != "q":
                raise ValueError(f"unexpected family {b!r} in light-cone map")
            items.append((o, pw))
        key = (_norm_ufields(items), 0, 0, 0)
        v = acc.get(key)
        acc[key] = c if v is None else v + c
    return ClosurePoly.from_dict(acc)


Matrix = Tuple[Tuple[ClosurePoly, ClosurePoly], Tuple[ClosurePoly, ClosurePoly]]


def mat(a, b, c, d) -> Matrix:
    return ((a, b), (c, d))


def mat_sub(x: Matrix, y: Matrix) -> Matrix:
    return tuple(tuple(x[i][j] - y[i][j] for j in (0, 1)) for i in (0, 1))


def mat_mul(x: Matrix, y: Matrix) -> Matrix:
    return tuple(
        tuple(x[i][0] * y[0][j] + x[i][1] * y[1][j] for j in (0, 1)) for i in (0, 1)
    )


def mat_scale(x: Matrix, c: GaussianRational) -> Matrix:
    return tuple(tuple(x[i][j].scale(c) for j in (0, 1)) for i in (0, 1))


def mat_is_zero(x: Matrix) -> bool:
    return all(x[i][j].is_zero for i in (0, 1) for j in (0, 1))


@dataclass(frozen=True)
class LightconeModel:
    """Symbolic data for one light-cone model in closure-ring form."""

    name: str
    epsilon: int
    rules: ClosureRules
    v1: Matrix  # coefficient of lambda^-1 in V
    potential: str  # how u relates to the light-cone field v

    @property
    def a1(self) -> ClosurePoly:
        return self.v1[0][0]

    @property
    def b1(self) -> ClosurePoly:
        return self.v1[0][1]


def build_sg() -> LightconeModel:
    a1 = COS.scale(_imag(1, 4))
    b1 = SIN.scale(_imag(1, 4))
    v1 = mat(a1, b1, b1, a1.scale(gr(-1)))
    return LightconeModel(
        name="sg", epsilon=-1, rules=SG_RULES, v1=v1, potential="u = -v_x/2"
    )


def build_liouville() -> LightconeModel:
    a1 = EXP.scale(_imag(1, 2))
    v1 = mat(a1, a1.scale(gr(-1)), a1, a1.scale(gr(-1)))
    return LightconeModel(
        name="liouville", epsilon=1, rules=LIOUVILLE_RULES, v1=v1,
        potential="u = v_x/2",
    )


def zero_curvature_residual(model: LightconeModel) -> Dict[int, Matrix]:
    """Residual of U_t - V_x + [U, V] per power of lambda (orders 0 and -1).

    U = -i lambda sigma3 + W with W off-diagonal (u, eps*u); V = V1/lambda.
    """
    rules = model.rules
    eps = gr(model.epsilon)
    u = ugen()
    w = mat(ZERO_C, u, u.scale(eps), ZERO_C)
    v1 = model.v1
    # lambda^0: W_t - i [sigma3, V1]
    ut = dt(u, rules)
    wt = mat(ZERO_C, ut, ut.scale(eps), ZERO_C)
    comm_sigma = mat(ZERO_C, v1[0][1].scale(gr(2)), v1[1][0].scale(gr(-2)), ZERO_C)
    lam0 = mat_sub(wt, mat_scale(comm_sigma, _imag(1)))
    # lambda^-1: -V1_x + [W, V1]
    v1x = tuple(tuple(dx(v1[i][j], rules) for j in (0, 1)) for i in (0, 1))
    comm_w = mat_sub(mat_mul(w, v1), mat_mul(v1, w))
    lam_m1 = mat_sub(comm_w, v1x)
    return {0: lam0, -1: lam_m1}


def bulk_conservation_residual(
    model: LightconeModel, gamma_n: DiffPolynomial, gamma_prev: DiffPolynomial, n: int
) -> ClosurePoly:
    """D_t(q Gamma_n) - D_x(flux_n) in the closure ring.

    `gamma_n`/`gamma_prev` are main-ring polynomials already reduced to the q
    family (r -> eps*q applied); flux_n = 2i*(A1*[n==1] + B1*Gamma_{n-1}).
    """
    from .algebra.polynomial import gen as qgen

    density = from_q_polynomial(qgen("q") * gamma_n)
    lhs = dt(density, model.rules)
    flux = ZERO_C
    if n == 1:
        flux = flux + model.a1
    flux = flux + model.b1 * from_q_polynomial(gamma_prev)
    flux = flux.scale(_imag(2))
    return lhs - dx(flux, model.rules)
