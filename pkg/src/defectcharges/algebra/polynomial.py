"""Differential polynomials in the field generators q, r, qt, rt.

A monomial is a product of x-derivatives of the four field families, powers of
the defect parameters, an optional single power of the radical generator Omega,
and an exact Gaussian-rational coefficient.  Omega obeys the quadratic rewrite

    Omega^2 -> alpha_minus^2 - (qt - q)(rt - r)

which is applied eagerly during multiplication, so stored powers of Omega are
always 0 or 1.  The x-derivative refuses Omega-bearing input: the radical has
no polynomial derivative, and every place that needs one works on-shell or
numerically instead.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Tuple, Union

from ..errors import OmegaNotDifferentiableError, UnboundSymbolError
from .numbers import GaussianRational, gr

FIELD_BASES = ("q", "r", "qt", "rt")
PARAM_NAMES = ("alpha_plus", "alpha_minus", "beta", "alpha", "gamma")

_BASE_INDEX = {b: i for i, b in enumerate(FIELD_BASES)}
_PARAM_INDEX = {p: i for i, p in enumerate(PARAM_NAMES)}

# fields: tuple of ((base, order), power); params: tuple of (name, power)
FieldPart = Tuple[Tuple[Tuple[str, int], int], ...]
ParamPart = Tuple[Tuple[str, int], ...]
TermKey = Tuple[FieldPart, ParamPart, int]

Bindings = Mapping[Tuple[str, int], complex]
ParamValues = Mapping[str, complex]


def _key_sort(key: TermKey):
    fields, params, om = key
    return (
        tuple(((_BASE_INDEX[b], o), p) for (b, o), p in fields),
        tuple((_PARAM_INDEX[n], p) for n, p in params),
        om,
    )


def _normalize_fields(items: Iterable[Tuple[Tuple[str, int], int]]) -> FieldPart:
    acc: dict = {}
    for sym, p in items:
        if p:
            acc[sym] = acc.get(sym, 0) + p
    out = [(s, p) for s, p in acc.items() if p]
    out.sort(key=lambda it: (_BASE_INDEX[it[0][0]], it[0][1]))
    return tuple(out)


def _normalize_params(items: Iterable[Tuple[str, int]]) -> ParamPart:
    acc: dict = {}
    for name, p in items:
        if p:
            acc[name] = acc.get(name, 0) + p
    out = [(n, p) for n, p in acc.items() if p]
    out.sort(key=lambda it: _PARAM_INDEX[it[0]])
    return tuple(out)


@dataclass(frozen=True)
class DiffPolynomial:
    """Canonically ordered, immutable sum of monomials."""

    terms: Tuple[Tuple[TermKey, GaussianRational], ...]

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_dict(d: Mapping[TermKey, GaussianRational]) -> "DiffPolynomial":
        items = [(k, c) for k, c in d.items() if not c.is_zero]
        items.sort(key=lambda kc: _key_sort(kc[0]))
        return DiffPolynomial(tuple(items))

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def has_omega(self) -> bool:
        return any(k[2] for k, _ in self.terms)

    def constant_term(self) -> GaussianRational:
        """Coefficient of the field-free, param-free, Omega-free monomial."""
        for k, c in self.terms:
            if k == ((), (), 0):
                return c
        return gr(0)

    def field_free_part(self) -> "DiffPolynomial":
        """Terms containing no field generators (params/Omega allowed)."""
        return DiffPolynomial.from_dict(
            {k: c for k, c in self.terms if not k[0]}
        )

    def is_constant(self) -> bool:
        return all(not k[0] and not k[2] for k, _ in self.terms)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "DiffPolynomial") -> "DiffPolynomial":
        acc = dict(self.terms)
        for k, c in other.terms:
            s = acc.get(k)
            acc[k] = c if s is None else s + c
        return DiffPolynomial.from_dict(acc)

    def __sub__(self, other: "DiffPolynomial") -> "DiffPolynomial":
        return self + (-other)

    def __neg__(self) -> "DiffPolynomial":
        return DiffPolynomial(tuple((k, -c) for k, c in self.terms))

    def scale(self, c: Union[GaussianRational, int, Fraction]) -> "DiffPolynomial":
        if not isinstance(c, GaussianRational):
            c = gr(c)
        if c.is_zero:
            return ZERO
        return DiffPolynomial(tuple((k, coef * c) for k, coef in self.terms))

    def __mul__(self, other: "DiffPolynomial") -> "DiffPolynomial":
        acc: dict = {}
        deferred = []  # products that hit Omega^2 and need the rewrite
        for k1, c1 in self.terms:
            f1, p1, o1 = k1
            for k2, c2 in other.terms:
                f2, p2, o2 = k2
                key = (
                    _normalize_fields(list(f1) + list(f2)),
                    _normalize_params(list(p1) + list(p2)),
                    o1 + o2,
                )
                c = c1 * c2
                if key[2] < 2:
                    s = acc.get(key)
                    acc[key] = c if s is None else s + c
                else:
                    deferred.append(((key[0], key[1], 0), c))
        out = DiffPolynomial.from_dict(acc)
        if deferred:
            rewrite = omega_square()
            extra = DiffPolynomial.from_dict(dict(_merge(deferred)))
            out = out + extra * rewrite
        return out

    def __pow__(self, n: int) -> "DiffPolynomial":
        if n < 0:
            raise ValueError("negative polynomial power")
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    # -- calculus ----------------------------------------------------------

    def dx(self) -> "DiffPolynomial":
        """Total x-derivative (Leibniz; parameters are constants)."""
        acc: dict = {}
        for (fields, params, om), c in self.terms:
            if om:
                raise OmegaNotDifferentiableError(
                    "total x-derivative of an Omega-bearing polynomial"
                )
            for i, ((b, o), p) in enumerate(fields):
                items = list(fields)
                items[i] = ((b, o), p - 1)
                items.append(((b, o + 1), 1))
                key = (_normalize_fields(items), params, 0)
                cc = c * gr(p)
                s = acc.get(key)
                acc[key] = cc if s is None else s + cc
        return DiffPolynomial.from_dict(acc)

    def partial(self, base: str, order: int) -> "DiffPolynomial":
        """Formal partial derivative with respect to one generator."""
        acc: dict = {}
        for (fields, params, om), c in self.terms:
            for i, ((b, o), p) in enumerate(fields):
                if b == base and o == order:
                    items = list(fields)
                    items[i] = ((b, o), p - 1)
                    key = (_normalize_fields(items), params, om)
                    cc = c * gr(p)
                    s = acc.get(key)
                    acc[key] = cc if s is None else s + cc
        return DiffPolynomial.from_dict(acc)

    # -- substitutions -----------------------------------------------------

    def substitute_param(
        self,
        name: str,
        scale: GaussianRational,
        target: Optional[str] = None,
    ) -> "DiffPolynomial":
        """Replace the parameter `name` by scale * target (target None = 1)."""
        acc: dict = {}
        for (fields, params, om), c in self.terms:
            k = 0
            rest = []
            for n, p in params:
                if n == name:
                    k = p
                else:
                    rest.append((n, p))
            if k:
                c = c * scale**k
                if c.is_zero:
                    continue
                if target is not None:
                    rest.append((target, k))
            key = (fields, _normalize_params(rest), om)
            s = acc.get(key)
            acc[key] = c if s is None else s + c
        return DiffPolynomial.from_dict(acc)

    def substitute_family(
        self,
        base: str,
        new_base: Optional[str] = None,
        scale: GaussianRational = gr(1),
        const: Optional[GaussianRational] = None,
    ) -> "DiffPolynomial":
        """Rewrite one field family.

        With `new_base`, every generator (base, k) becomes scale^power *
        (new_base, k).  With `const`, order-0 generators become the constant
        (scale is ignored) and all derivatives of the family are sent to zero.
        """
        acc: dict = {}
        for (fields, params, om), c in self.terms:
            items = []
            dead = False
            for (b, o), p in fields:
                if b != base:
                    items.append(((b, o), p))
                    continue
                if const is not None:
                    if o == 0:
                        c = c * const**p
                        if c.is_zero:
                            dead = True
                            break
                    else:
                        dead = True
                        break
                else:
                    c = c * scale**p
                    items.append(((new_base if new_base else b, o), p))
            if dead or c.is_zero:
                continue
            key = (_normalize_fields(items), params, om)
            s = acc.get(key)
            acc[key] = c if s is None else s + c
        return DiffPolynomial.from_dict(acc)

    def substitute_omega(self, replacement: "DiffPolynomial") -> "DiffPolynomial":
        """Replace the Omega generator by an Omega-free polynomial.

        Only consistent when replacement^2 equals the Omega rewrite under the
        substitutions already applied; the caller is responsible for that.
        """
        if replacement.has_omega:
            raise ValueError("replacement must be Omega-free")
        plain: dict = {}
        radical = []
        for (fields, params, om), c in self.terms:
            if om == 0:
                plain[(fields, params, 0)] = plain.get((fields, params, 0), gr(0)) + c
            else:
                radical.append(((fields, params, 0), c))
        out = DiffPolynomial.from_dict(plain)
        if radical:
            out = out + DiffPolynomial.from_dict(dict(_merge(radical))) * replacement
        return out

    def conjugate_class1(self, epsilon: int) -> "DiffPolynomial":
        """Image under complex conjugation with the class-I/II dictionary.

        q <-> r and qt <-> rt (value conjugation with r = eps * q^*), the
        coefficient is conjugated, alpha_minus flips sign (it is imaginary),
        and Omega flips sign.
        """
        swap = {"q": "r", "r": "q", "qt": "rt", "rt": "qt"}
        acc: dict = {}
        for (fields, params, om), c in self.terms:
            c = c.conjugate()
            nf = []
            total = 0
            for (b, o), p in fields:
                nf.append(((swap[b], o), p))
                total += p
            if epsilon == -1 and total % 2:
                c = -c
            np_ = []
            for n, p in params:
                if n == "alpha_minus" and p % 2:
                    c = -c
                np_.append((n, p))
            if om:
                c = -c
            key = (_normalize_fields(nf), _normalize_params(np_), om)
            s = acc.get(key)
            acc[key] = c if s is None else s + c
        return DiffPolynomial.from_dict(acc)

    def tilde_swap(self) -> "DiffPolynomial":
        """Exchange plain and tilde families (q<->qt, r<->rt)."""
        swap = {"q": "qt", "qt": "q", "r": "rt", "rt": "r"}
        acc: dict = {}
        for (fields, params, om), c in self.terms:
            nf = [((swap[b], o), p) for (b, o), p in fields]
            key = (_normalize_fields(nf), params, om)
            s = acc.get(key)
            acc[key] = c if s is None else s + c
        return DiffPolynomial.from_dict(acc)

    # -- inspection --------------------------------------------------------

    def generators(self) -> set:
        out = set()
        for (fields, _, _), _c in self.terms:
            for (b, o), _p in fields:
                out.add((b, o))
        return out

    def max_order(self, base: Optional[str] = None) -> int:
        m = -1
        for (fields, _, _), _c in self.terms:
            for (b, o), _p in fields:
                if base is None or b == base:
                    m = max(m, o)
        return m

    def map_coefficients(
        self, f: Callable[[GaussianRational], GaussianRational]
    ) -> "DiffPolynomial":
        return DiffPolynomial.from_dict({k: f(c) for k, c in self.terms})

    # -- numeric evaluation -------------------------------------------------

    def evaluate(
        self,
        bindings: Bindings,
        params: Optional[ParamValues] = None,
        omega_branch: int = 1,
        omega_value: Optional[complex] = None,
    ) -> complex:
        """Evaluate on complex samples; exact arithmetic until the final sum.

        Omega is evaluated as `omega_value` when given, otherwise as
        omega_branch * principal sqrt of the rewrite polynomial's value.
        """
        params = params or {}
        om_val = omega_value
        if om_val is None and self.has_omega:
            rad = omega_square().evaluate(bindings, params)
            om_val = omega_branch * cmath.sqrt(rad)
        total = 0j
        for (fields, pars, om), c in self.terms:
            v = complex(c)
            for (b, o), p in fields:
                try:
                    v *= bindings[(b, o)] ** p
                except KeyError:
                    raise UnboundSymbolError(f"no binding for {b}[{o}]") from None
            for n, p in pars:
                try:
                    v *= params[n] ** p
                except KeyError:
                    raise UnboundSymbolError(f"no value for parameter {n}") from None
            if om:
                v *= om_val ** om
            total += v
        return total

    def __str__(self) -> str:  # pragma: no cover - delegated
        from .textform import to_text

        return to_text(self)


def _merge(items):
    acc: dict = {}
    for k, c in items:
        s = acc.get(k)
        acc[k] = c if s is None else s + c
    return acc.items()


# -- constructors ------------------------------------------------------------

ZERO = DiffPolynomial(())
ONE = DiffPolynomial((((() , (), 0), gr(1)),))


def const(c: Union[GaussianRational, int, Fraction]) -> DiffPolynomial:
    if not isinstance(c, GaussianRational):
        c = gr(c)
    if c.is_zero:
        return ZERO
    return DiffPolynomial(((((), (), 0), c),))


def gen(base: str, order: int = 0) -> DiffPolynomial:
    if base not in _BASE_INDEX:
        raise ValueError(f"unknown field base {base!r}")
    if order < 0:
        raise ValueError("derivative order must be >= 0")
    key = ((((base, order), 1),), (), 0)
    return DiffPolynomial(((key, gr(1)),))


def param(name: str, power: int = 1) -> DiffPolynomial:
    if name not in _PARAM_INDEX:
        raise ValueError(f"unknown parameter {name!r}")
    return DiffPolynomial(((((), ((name, power),), 0), gr(1)),))


def omega() -> DiffPolynomial:
    return DiffPolynomial(((((), (), 1), gr(1)),))


_OMEGA_SQUARE = None


def omega_square() -> DiffPolynomial:
    """The rewrite target alpha_minus^2 - (qt - q)(rt - r), expanded."""
    global _OMEGA_SQUARE
    if _OMEGA_SQUARE is None:
        q, r, qt, rt = gen("q"), gen("r"), gen("qt"), gen("rt")
        _OMEGA_SQUARE = param("alpha_minus", 2) - (qt - q) * (rt - r)
    return _OMEGA_SQUARE
