"""Truncated formal Laurent series in the spectral parameter.

Coefficients are differential polynomials; exponents are plain integers (the
paper's (2i*lambda)^-n bookkeeping is absorbed into the coefficients, see the
charges module).  A series is either exact (a finite Laurent polynomial, like
U, V or a defect matrix) or known only for exponents >= -trunc_order.
Truncation propagates pessimistically through every operation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Mapping, Optional, Tuple, Union

from .algebra.numbers import GaussianRational, gr
from .algebra.polynomial import (
    Bindings,
    DiffPolynomial,
    ONE as POLY_ONE,
    ParamValues,
    ZERO as POLY_ZERO,
    const,
)
from .errors import NotUnitSeriesError, SingularLeadingTermError

_NEG_INF = None  # sentinel for "exact": nothing is unknown


@dataclass(frozen=True)
class LaurentSeries:
    """Mapping exponent -> coefficient with explicit knowledge floor.

    `floor` is None for exact series; otherwise coefficients at exponents
    below `floor` are unknown and have been dropped.
    """

    coeffs: Tuple[Tuple[int, DiffPolynomial], ...]
    floor: Optional[int] = None

    @staticmethod
    def from_dict(
        d: Mapping[int, DiffPolynomial], floor: Optional[int] = None
    ) -> "LaurentSeries":
        items = [
            (e, p)
            for e, p in d.items()
            if not p.is_zero and (floor is None or e >= floor)
        ]
        items.sort(key=lambda ep: ep[0])
        return LaurentSeries(tuple(items), floor)

    # -- helpers -----------------------------------------------------------

    @property
    def exact(self) -> bool:
        return self.floor is None

    @property
    def trunc_order(self) -> Optional[int]:
        return None if self.floor is None else -self.floor

    def coeff(self, exponent: int) -> DiffPolynomial:
        for e, p in self.coeffs:
            if e == exponent:
                return p
        return POLY_ZERO

    def max_exponent(self) -> Optional[int]:
        return self.coeffs[-1][0] if self.coeffs else None

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def truncate(self, floor: int) -> "LaurentSeries":
        f = floor if self.floor is None else max(floor, self.floor)
        return LaurentSeries.from_dict(dict(self.coeffs), f)

    def map(self, f: Callable[[DiffPolynomial], DiffPolynomial]) -> "LaurentSeries":
        return LaurentSeries.from_dict({e: f(p) for e, p in self.coeffs}, self.floor)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        if self.floor is None:
            floor = other.floor
        elif other.floor is None:
            floor = self.floor
        else:
            floor = max(self.floor, other.floor)
        acc: Dict[int, DiffPolynomial] = dict(self.coeffs)
        for e, p in other.coeffs:
            acc[e] = acc.get(e, POLY_ZERO) + p
        return LaurentSeries.from_dict(acc, floor)

    def __sub__(self, other: "LaurentSeries") -> "LaurentSeries":
        return self + other.scale(gr(-1))

    def scale(self, c: Union[GaussianRational, int, Fraction]) -> "LaurentSeries":
        return LaurentSeries.from_dict(
            {e: p.scale(c) for e, p in self.coeffs}, self.floor
        )

    def scale_poly(self, q: DiffPolynomial) -> "LaurentSeries":
        return LaurentSeries.from_dict(
            {e: p * q for e, p in self.coeffs}, self.floor
        )

    def shift(self, n: int) -> "LaurentSeries":
        """Multiply by lambda^n."""
        return LaurentSeries.from_dict(
            {e + n: p for e, p in self.coeffs},
            None if self.floor is None else self.floor + n,
        )

    def __mul__(self, other: "LaurentSeries") -> "LaurentSeries":
        floor = _product_floor(self, other)
        acc: Dict[int, DiffPolynomial] = {}
        for e1, p1 in self.coeffs:
            for e2, p2 in other.coeffs:
                e = e1 + e2
                if floor is not None and e < floor:
                    continue
                prod = p1 * p2
                if prod.is_zero:
                    continue
                acc[e] = acc.get(e, POLY_ZERO) + prod
        return LaurentSeries.from_dict(acc, floor)

    def dx(self) -> "LaurentSeries":
        return self.map(lambda p: p.dx())

    # -- analytic-style operations -------------------------------------------

    def log(self, order: int) -> "LaurentSeries":
        """log of 1 + X with X supported on strictly negative exponents.

        Returns the Mercator series through lambda^-order (exact rational
        coefficients).
        """
        x = self._unit_tail()
        out = zero_series()
        power = one_series()
        sign = 1
        for k in range(1, order + 1):
            power = (power * x).truncate(-order)
            if power.is_zero:
                break
            out = out + power.scale(GaussianRational(Fraction(sign, k), Fraction(0)))
            sign = -sign
        return LaurentSeries.from_dict(dict(out.coeffs), -order)

    def exp_unit(self, order: int) -> "LaurentSeries":
        """exp of a series supported on strictly negative exponents."""
        for e, _ in self.coeffs:
            if e >= 0:
                raise NotUnitSeriesError("exp needs strictly negative support")
        out = one_series()
        power = one_series()
        for k in range(1, order + 1):
            power = (power * self).truncate(-order)
            if power.is_zero:
                break
            out = out + power.scale(
                GaussianRational(Fraction(1, math.factorial(k)), Fraction(0))
            )
        return LaurentSeries.from_dict(dict(out.coeffs), -order)

    def reciprocal(self, order: int) -> "LaurentSeries":
        """1/s for s = c0*(1 + X), c0 an invertible constant coefficient."""
        c0 = self.coeff(0)
        if not c0.is_constant() or c0.is_zero:
            raise SingularLeadingTermError(
                "reciprocal needs an invertible constant term"
            )
        c0val = c0.constant_term()
        scaled = self.scale(gr(1) / c0val)
        x = scaled._unit_tail()
        out = one_series()
        power = one_series()
        for k in range(1, order + 1):
            power = (power * x).truncate(-order)
            if power.is_zero:
                break
            out = out + power.scale(gr((-1) ** k))
        return LaurentSeries.from_dict(dict(out.coeffs), -order).scale(gr(1) / c0val)

    def _unit_tail(self) -> "LaurentSeries":
        for e, p in self.coeffs:
            if e > 0:
                raise NotUnitSeriesError("series has positive powers of lambda")
            if e == 0 and p != POLY_ONE:
                raise NotUnitSeriesError("constant term is not 1")
        if self.coeff(0) != POLY_ONE:
            raise NotUnitSeriesError("constant term is not 1")
        return LaurentSeries.from_dict(
            {e: p for e, p in self.coeffs if e < 0}, self.floor
        )

    # -- evaluation ----------------------------------------------------------

    def evaluate(
        self,
        lam: complex,
        bindings: Bindings,
        params: Optional[ParamValues] = None,
        omega_value: Optional[complex] = None,
        omega_branch: int = 1,
    ) -> complex:
        total = 0j
        for e, p in self.coeffs:
            total += (
                p.evaluate(bindings, params, omega_branch, omega_value) * lam**e
            )
        return total


def _product_floor(a: LaurentSeries, b: LaurentSeries) -> Optional[int]:
    cands = []
    if a.floor is not None:
        top_b = b.max_exponent()
        cands.append(a.floor + (top_b if top_b is not None else 0))
    if b.floor is not None:
        top_a = a.max_exponent()
        cands.append(b.floor + (top_a if top_a is not None else 0))
    if not cands:
        return None
    return max(cands)


def zero_series() -> LaurentSeries:
    return LaurentSeries((), None)


def one_series() -> LaurentSeries:
    return LaurentSeries(((0, POLY_ONE),), None)


def monomial_series(exponent: int, p: DiffPolynomial) -> LaurentSeries:
    return LaurentSeries.from_dict({exponent: p})


def const_series(c: Union[GaussianRational, int, Fraction]) -> LaurentSeries:
    return monomial_series(0, const(c))


@dataclass(frozen=True)
class MatrixSeries:
    """2x2 matrix of Laurent series."""

    entries: Tuple[Tuple[LaurentSeries, LaurentSeries], Tuple[LaurentSeries, LaurentSeries]]

    @staticmethod
    def of(a, b, c, d) -> "MatrixSeries":
        return MatrixSeries(((a, b), (c, d)))

    @staticmethod
    def identity() -> "MatrixSeries":
        return MatrixSeries.of(one_series(), zero_series(), zero_series(), one_series())

    @staticmethod
    def sigma3() -> "MatrixSeries":
        return MatrixSeries.of(
            one_series(), zero_series(), zero_series(), const_series(-1)
        )

    def __getitem__(self, ij: Tuple[int, int]) -> LaurentSeries:
        return self.entries[ij[0]][ij[1]]

    def __add__(self, other: "MatrixSeries") -> "MatrixSeries":
        return MatrixSeries.of(
            *(self[i, j] + other[i, j] for i in (0, 1) for j in (0, 1))
        )

    def __sub__(self, other: "MatrixSeries") -> "MatrixSeries":
        return MatrixSeries.of(
            *(self[i, j] - other[i, j] for i in (0, 1) for j in (0, 1))
        )

    def __mul__(self, other: "MatrixSeries") -> "MatrixSeries":
        return MatrixSeries.of(
            *(
                self[i, 0] * other[0, j] + self[i, 1] * other[1, j]
                for i in (0, 1)
                for j in (0, 1)
            )
        )

    def scale(self, c) -> "MatrixSeries":
        return self.map(lambda s: s.scale(c))

    def map(self, f: Callable[[LaurentSeries], LaurentSeries]) -> "MatrixSeries":
        return MatrixSeries.of(*(f(self[i, j]) for i in (0, 1) for j in (0, 1)))

    def commutator(self, other: "MatrixSeries") -> "MatrixSeries":
        return self * other - other * self

    def det(self) -> LaurentSeries:
        return self[0, 0] * self[1, 1] - self[0, 1] * self[1, 0]

    def trace(self) -> LaurentSeries:
        return self[0, 0] + self[1, 1]

    def inverse(self, order: int) -> "MatrixSeries":
        """Adjugate over determinant, with the determinant inverted as a
        truncated series to lambda^-order."""
        inv_det = self.det().reciprocal(order)
        adj = MatrixSeries.of(
            self[1, 1],
            self[0, 1].scale(gr(-1)),
            self[1, 0].scale(gr(-1)),
            self[0, 0],
        )
        return adj.map(lambda s: (s * inv_det).truncate(-order))

    @property
    def is_zero(self) -> bool:
        return all(self[i, j].is_zero for i in (0, 1) for j in (0, 1))

    def evaluate(
        self,
        lam: complex,
        bindings: Bindings,
        params: Optional[ParamValues] = None,
        omega_value: Optional[complex] = None,
        omega_branch: int = 1,
    ):
        return [
            [
                self[i, j].evaluate(lam, bindings, params, omega_value, omega_branch)
                for j in (0, 1)
            ]
            for i in (0, 1)
        ]
