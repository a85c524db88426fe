"""Truncated Taylor-jet arithmetic for exact derivatives of closed forms.

A Jet carries the Taylor coefficients a_k = f^(k)/k! of a scalar function at
a point; elementary functions propagate through the standard recurrences, so
scenario evaluators get machine-precision derivatives of any order without
symbolic differentiation or finite differencing.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from math import factorial
from typing import Sequence, Tuple, Union

Scalar = Union[int, float, complex]


@dataclass(frozen=True)
class Jet:
    coeffs: Tuple[complex, ...]

    @staticmethod
    def variable(x: Scalar, order: int) -> "Jet":
        c = [complex(x)] + [0j] * order
        if order >= 1:
            c[1] = 1.0 + 0j
        return Jet(tuple(c))

    @staticmethod
    def constant(x: Scalar, order: int) -> "Jet":
        return Jet((complex(x),) + (0j,) * order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def value(self) -> complex:
        return self.coeffs[0]

    def derivatives(self) -> Tuple[complex, ...]:
        return tuple(a * factorial(k) for k, a in enumerate(self.coeffs))

    def _lift(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        return Jet.constant(other, self.order)

    def __add__(self, other) -> "Jet":
        o = self._lift(other)
        return Jet(tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "Jet":
        return Jet(tuple(-a for a in self.coeffs))

    def __sub__(self, other) -> "Jet":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Jet":
        return (-self) + other

    def __mul__(self, other) -> "Jet":
        o = self._lift(other)
        n = self.order
        out = [0j] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(0, n + 1 - i):
                out[i + j] += a * o.coeffs[j]
        return Jet(tuple(out))

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet":
        n = self.order
        u = self.coeffs
        if u[0] == 0:
            raise ZeroDivisionError("jet with zero value")
        v = [1.0 / u[0]] + [0j] * n
        for k in range(1, n + 1):
            acc = 0j
            for j in range(1, k + 1):
                acc += u[j] * v[k - j]
            v[k] = -acc / u[0]
        return Jet(tuple(v))

    def __truediv__(self, other) -> "Jet":
        return self * self._lift(other).reciprocal()

    def __rtruediv__(self, other) -> "Jet":
        return self.reciprocal() * other

    def __pow__(self, n: int) -> "Jet":
        out = Jet.constant(1.0, self.order)
        for _ in range(n):
            out = out * self
        return out


def exp(u: Jet) -> Jet:
    n = u.order
    f = [cmath.exp(u.coeffs[0])] + [0j] * n
    for k in range(1, n + 1):
        acc = 0j
        for j in range(1, k + 1):
            acc += j * u.coeffs[j] * f[k - j]
        f[k] = acc / k
    return Jet(tuple(f))


def log(u: Jet) -> Jet:
    n = u.order
    if u.coeffs[0] == 0:
        raise ZeroDivisionError("log of zero-valued jet")
    g = [cmath.log(u.coeffs[0])] + [0j] * n
    for k in range(1, n + 1):
        acc = 0j
        for j in range(1, k):
            acc += j * g[j] * u.coeffs[k - j]
        g[k] = (u.coeffs[k] - acc / k) / u.coeffs[0]
    return Jet(tuple(g))


def sqrt(u: Jet) -> Jet:
    n = u.order
    s0 = cmath.sqrt(u.coeffs[0])
    if s0 == 0:
        raise ZeroDivisionError("sqrt of zero-valued jet")
    s = [s0] + [0j] * n
    for k in range(1, n + 1):
        acc = 0j
        for j in range(1, k):
            acc += s[j] * s[k - j]
        s[k] = (u.coeffs[k] - acc) / (2 * s0)
    return Jet(tuple(s))


def sin_cos(u: Jet) -> Tuple[Jet, Jet]:
    n = u.order
    s = [cmath.sin(u.coeffs[0])] + [0j] * n
    c = [cmath.cos(u.coeffs[0])] + [0j] * n
    for k in range(1, n + 1):
        sa = ca = 0j
        for j in range(1, k + 1):
            sa += j * u.coeffs[j] * c[k - j]
            ca += j * u.coeffs[j] * s[k - j]
        s[k] = sa / k
        c[k] = -ca / k
    return Jet(tuple(s)), Jet(tuple(c))


def sin(u: Jet) -> Jet:
    return sin_cos(u)[0]


def cos(u: Jet) -> Jet:
    return sin_cos(u)[1]


def sinh_cosh(u: Jet) -> Tuple[Jet, Jet]:
    n = u.order
    s = [cmath.sinh(u.coeffs[0])] + [0j] * n
    c = [cmath.cosh(u.coeffs[0])] + [0j] * n
    for k in range(1, n + 1):
        sa = ca = 0j
        for j in range(1, k + 1):
            sa += j * u.coeffs[j] * c[k - j]
            ca += j * u.coeffs[j] * s[k - j]
        s[k] = sa / k
        c[k] = ca / k
    return Jet(tuple(s)), Jet(tuple(c))


def sech(u: Jet) -> Jet:
    return sinh_cosh(u)[1].reciprocal()


def tanh(u: Jet) -> Jet:
    s, c = sinh_cosh(u)
    return s / c


def atan(u: Jet) -> Jet:
    n = u.order
    w = (Jet.constant(1.0, n) + u * u).reciprocal()
    a = [cmath.atan(u.coeffs[0])] + [0j] * n
    for k in range(1, n + 1):
        acc = 0j
        for j in range(1, k + 1):
            acc += j * u.coeffs[j] * w.coeffs[k - j]
        a[k] = acc / k
    return Jet(tuple(a))
