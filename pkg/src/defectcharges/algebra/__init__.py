"""Exact differential-polynomial ring over Q(i) with the Omega radical."""

from .numbers import GaussianRational, gr
from .polynomial import (
    FIELD_BASES,
    PARAM_NAMES,
    ONE,
    ZERO,
    DiffPolynomial,
    const,
    gen,
    omega,
    omega_square,
    param,
)
from .calculus import (
    dx_antiderivative,
    euler_operator,
    is_dx_exact,
    total_t_derivative,
)
from .textform import from_json_dict, from_text, to_json_dict, to_text

__all__ = [
    "GaussianRational",
    "gr",
    "FIELD_BASES",
    "PARAM_NAMES",
    "ONE",
    "ZERO",
    "DiffPolynomial",
    "const",
    "gen",
    "omega",
    "omega_square",
    "param",
    "dx_antiderivative",
    "euler_operator",
    "is_dx_exact",
    "total_t_derivative",
    "from_json_dict",
    "from_text",
    "to_json_dict",
    "to_text",
]
