"""Variational calculus on differential polynomials.

The Euler operator decides D_x-exactness; the antiderivative inverts D_x on
exact polynomials (integration by parts, highest derivative first); the total
t-derivative substitutes equations of motion for the time derivatives of the
field generators.
"""

from __future__ import annotations

from typing import Dict, Mapping

from ..errors import NotExactError
from .numbers import gr
from .polynomial import FIELD_BASES, ZERO, DiffPolynomial, gen


def euler_operator(p: DiffPolynomial, base: str) -> DiffPolynomial:
    """Sum over k of (-D_x)^k d/d(base,k) applied to p."""
    out = ZERO
    for order in range(p.max_order(base) + 1):
        term = p.partial(base, order)
        for _ in range(order):
            term = -term.dx()
        out = out + term
    return out


def is_dx_exact(p: DiffPolynomial) -> bool:
    """True when p = D_x(h) for some differential polynomial h.

    Requires a vanishing field-free part (a nonzero constant has no
    polynomial antiderivative) and all four Euler images to vanish.
    """
    if not p.field_free_part().is_zero:
        return False
    return all(euler_operator(p, b).is_zero for b in FIELD_BASES)


def dx_antiderivative(p: DiffPolynomial) -> DiffPolynomial:
    """Return h with D_x(h) = p, or raise NotExactError.

    Integration by parts, highest generator first: a term linear in the top
    derivative g^(k) is grouped by its power j of g^(k-1) and integrated as
    m * (g^(k-1))^(j+1) / (j+1); the top derivative never reappears in the
    subtracted remainder because m is free of g^(k-1).
    """
    if p.has_omega:
        raise NotExactError("cannot integrate an Omega-bearing polynomial")
    if not is_dx_exact(p):
        raise NotExactError("polynomial is not a total x-derivative")
    from fractions import Fraction

    from .numbers import GaussianRational

    h = ZERO
    rem = p
    for _ in range(1000):
        if rem.is_zero:
            return h
        top = None
        for (fields, _params, _om), _c in rem.terms:
            for (b, o), _p in fields:
                if o >= 1 and (top is None or (o, b) > (top[1], top[0])):
                    top = (b, o)
        if top is None:
            raise NotExactError(f"remainder is not exact: {rem}")
        b, o = top
        piece = ZERO
        for (fields, params, om), c in rem.terms:
            fdict = dict(fields)
            pw = fdict.get((b, o), 0)
            if pw == 0:
                continue
            if pw > 1:
                raise NotExactError(f"top derivative {b}[{o}] appears nonlinearly")
            j = fdict.get((b, o - 1), 0)
            rest = tuple(
                it for it in fields if it[0] not in ((b, o), (b, o - 1))
            )
            weight = c * GaussianRational(Fraction(1, j + 1), Fraction(0))
            mono = DiffPolynomial((((rest, params, om), weight),))
            piece = piece + mono * gen(b, o - 1) ** (j + 1)
        h = h + piece
        rem = rem - piece.dx()
    raise NotExactError("integration by parts did not terminate")


EomMap = Mapping[str, DiffPolynomial]


def total_t_derivative(p: DiffPolynomial, eom: EomMap) -> DiffPolynomial:
    """Total t-derivative with field time derivatives taken from `eom`.

    `eom` maps a base name to its t-derivative polynomial; x-derivatives of
    the equations of motion are generated as needed.  Families absent from
    the map are treated as t-independent.
    """
    cache: Dict[tuple, DiffPolynomial] = {}

    def dt_of(base: str, order: int) -> DiffPolynomial:
        key = (base, order)
        if key in cache:
            return cache[key]
        rhs = eom.get(base)
        if rhs is None:
            out = ZERO
        else:
            out = rhs
            for _ in range(order):
                out = out.dx()
        cache[key] = out
        return out

    acc = ZERO
    for (fields, params, om), c in p.terms:
        if om:
            raise NotExactError("t-derivative of an Omega-bearing polynomial")
        for idx, ((b, o), pw) in enumerate(fields):
            items = list(fields)
            items[idx] = ((b, o), pw - 1)
            rest = DiffPolynomial(
                (((tuple((s, q) for s, q in items if q), params, 0), c * gr(pw)),)
            )
            acc = acc + rest * dt_of(b, o)
    return acc
