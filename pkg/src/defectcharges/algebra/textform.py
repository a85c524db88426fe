"""Canonical text and JSON forms of differential polynomials.

Both forms are deterministic (canonical term order, canonical coefficient
rendering) and round-trip losslessly; golden-file tests diff them directly.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Any, Dict, List

from .numbers import GaussianRational, gr
from .polynomial import (
    FIELD_BASES,
    PARAM_NAMES,
    ZERO,
    DiffPolynomial,
    const,
    gen,
    omega,
    param,
)


def _deriv_suffix(order: int) -> str:
    if order == 0:
        return ""
    if order <= 4:
        return "_" + "x" * order
    return f"_x{order}"


def _coeff_text(c: GaussianRational) -> str:
    s = str(c)
    if c.im != 0 or c.re < 0:
        return f"({s})"
    return s


def to_text(p: DiffPolynomial) -> str:
    """Render e.g. `(-1)*r_x + q*r^2`; the zero polynomial is `0`."""
    if p.is_zero:
        return "0"
    chunks: List[str] = []
    for (fields, params, om), c in p.terms:
        factors: List[str] = []
        for (b, o), pw in fields:
            name = b + _deriv_suffix(o)
            factors.append(name if pw == 1 else f"{name}^{pw}")
        for n, pw in params:
            factors.append(n if pw == 1 else f"{n}^{pw}")
        if om:
            factors.append("Omega")
        if not factors:
            chunks.append(_coeff_text(c))
        elif c == gr(1):
            chunks.append("*".join(factors))
        else:
            chunks.append(_coeff_text(c) + "*" + "*".join(factors))
    return " + ".join(chunks)


_COEFF_RE = re.compile(
    r"^\(?\s*(?P<re>[+-]?\d+(?:/\d+)?)?\s*(?P<im>[+-]?\s*(?:\d+(?:/\d+)?)?i)?\s*\)?$"
)
_FACTOR_RE = re.compile(r"^(?P<name>[A-Za-z_]+?)(?:_(?P<deriv>x+|x\d+))?(?:\^(?P<pow>\d+))?$")


def _parse_coeff(text: str) -> GaussianRational:
    m = _COEFF_RE.match(text.strip())
    if not m or (m.group("re") is None and m.group("im") is None):
        raise ValueError(f"bad coefficient {text!r}")
    re_part = Fraction(m.group("re")) if m.group("re") else Fraction(0)
    im_text = m.group("im")
    if im_text is None:
        im_part = Fraction(0)
    else:
        body = im_text.replace(" ", "")[:-1]  # strip the trailing i
        if body in ("", "+"):
            im_part = Fraction(1)
        elif body == "-":
            im_part = Fraction(-1)
        else:
            im_part = Fraction(body)
    return GaussianRational(re_part, im_part)


def _parse_factor(text: str) -> DiffPolynomial:
    m = _FACTOR_RE.match(text)
    if not m:
        raise ValueError(f"bad factor {text!r}")
    name = m.group("name")
    power = int(m.group("pow") or 1)
    deriv = m.group("deriv")
    if deriv is None:
        order = 0
    elif set(deriv) == {"x"}:
        order = len(deriv)
    else:
        order = int(deriv[1:])
    if name == "Omega":
        if order:
            raise ValueError("Omega carries no derivatives")
        out = omega()
    elif name in PARAM_NAMES:
        if order:
            raise ValueError(f"parameter {name} carries no derivatives")
        out = param(name, power)
        return out
    elif name in FIELD_BASES:
        out = gen(name, order)
    else:
        raise ValueError(f"unknown symbol {name!r}")
    res = out
    for _ in range(power - 1):
        res = res * out
    return res


def from_text(text: str) -> DiffPolynomial:
    """Parse the canonical text form back into a polynomial."""
    text = text.strip()
    if text == "0":
        return ZERO
    out = ZERO
    for chunk in text.split(" + "):
        parts = chunk.split("*")
        term = None
        start = 0
        first = parts[0]
        if first.startswith("(") or re.match(r"^[+-]?\d", first) or first in ("i", "-i"):
            term = const(_parse_coeff(first))
            start = 1
        else:
            term = const(1)
        for factor in parts[start:]:
            term = term * _parse_factor(factor)
        out = out + term
    return out


def to_json_dict(p: DiffPolynomial) -> Dict[str, Any]:
    """Structured lossless form with fractions carried as strings."""
    terms = []
    for (fields, params, om), c in p.terms:
        terms.append(
            {
                "coeff": {"re": str(c.re), "im": str(c.im)},
                "fields": [[b, o, pw] for (b, o), pw in fields],
                "params": [[n, pw] for n, pw in params],
                "omega": om,
            }
        )
    return {"terms": terms}


def from_json_dict(d: Dict[str, Any]) -> DiffPolynomial:
    acc = ZERO
    for t in d["terms"]:
        c = GaussianRational(Fraction(t["coeff"]["re"]), Fraction(t["coeff"]["im"]))
        key = (
            tuple(((b, o), pw) for b, o, pw in t["fields"]),
            tuple((n, pw) for n, pw in t["params"]),
            t["omega"],
        )
        acc = acc + DiffPolynomial(((key, c),))
    return acc
