"""Ring, calculus and serialization tests for the differential algebra."""

import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from defectcharges.algebra import (
    DiffPolynomial,
    GaussianRational,
    ONE,
    ZERO,
    const,
    dx_antiderivative,
    euler_operator,
    from_json_dict,
    from_text,
    gen,
    gr,
    is_dx_exact,
    omega,
    omega_square,
    param,
    to_json_dict,
    to_text,
    total_t_derivative,
)
from defectcharges.errors import (
    NotExactError,
    OmegaNotDifferentiableError,
    UnboundSymbolError,
)

q, r, qt, rt = gen("q"), gen("r"), gen("qt"), gen("rt")
qx, rx = gen("q", 1), gen("r", 1)


# -- gaussian rationals --------------------------------------------------------


def test_gaussian_rational_arithmetic():
    a = gr(Fraction(1, 2), 1)
    b = gr(2, Fraction(-1, 3))
    assert (a * b) == gr(Fraction(4, 3), Fraction(11, 6))
    assert (a / a) == gr(1)
    assert a.conjugate() == gr(Fraction(1, 2), -1)
    assert (gr(0, 1) ** 2) == gr(-1)
    assert complex(gr(1, 2)) == 1 + 2j


# -- spec examples ---------------------------------------------------------------


def test_monomial_product():
    assert to_text(q * q) == "q^2"


def test_omega_square_rewrite():
    # Omega * Omega -> alpha_minus^2 - (qt - q)(rt - r)
    expected = param("alpha_minus", 2) - (qt - q) * (rt - r)
    assert omega() * omega() == expected


def test_additive_inverse_is_empty():
    p = q * r + qx
    assert (p + p.scale(-1)).is_zero
    assert (p - p).terms == ()


def test_leibniz_examples():
    assert (q * r).dx() == qx * r + q * rx
    assert (-r).dx() == -rx
    assert (q * q * rx).dx() == (q * qx * rx).scale(2) + q * q * gen("r", 2)


def test_dx_refuses_omega():
    with pytest.raises(OmegaNotDifferentiableError):
        (omega() * q).dx()


def test_evaluate_examples():
    assert (q * q).evaluate({("q", 0): 1 + 1j}) == pytest.approx(2j)
    # Omega with class-I style bindings qt = q: radicand = alpha_minus^2
    b = {("q", 0): 0.5, ("qt", 0): 0.5, ("r", 0): -0.5, ("rt", 0): -0.5}
    val = omega().evaluate(b, {"alpha_minus": -2j})
    assert val == pytest.approx(2j)  # principal sqrt(-4)
    val_minus = omega().evaluate(b, {"alpha_minus": -2j}, omega_branch=-1)
    assert val_minus == pytest.approx(-2j)


def test_evaluate_unbound():
    with pytest.raises(UnboundSymbolError):
        (q * rx).evaluate({("q", 0): 1.0})
    with pytest.raises(UnboundSymbolError):
        param("beta").evaluate({})


def test_finite_difference_ramp():
    import numpy as np

    from defectcharges.harness.grid import finite_difference_bindings

    xs = np.linspace(-1, 1, 21)
    bind = finite_difference_bindings("q", 3 * xs, 0.1, 1)
    mid = {("q", 0): bind[("q", 0)][10], ("q", 1): bind[("q", 1)][10]}
    assert gen("q", 1).evaluate(mid) == pytest.approx(3.0)


# -- hypothesis ring laws ---------------------------------------------------------

_coeffs = st.builds(
    lambda a, b: gr(Fraction(a, 3), Fraction(b, 2)),
    st.integers(-4, 4),
    st.integers(-2, 2),
)
_gens = st.sampled_from(
    [q, r, qt, rt, qx, rx, gen("qt", 1), param("beta"), param("alpha_plus"), omega()]
)


@st.composite
def polys(draw, max_terms=3):
    n = draw(st.integers(0, max_terms))
    out = ZERO
    for _ in range(n):
        c = draw(_coeffs)
        factors = draw(st.lists(_gens, min_size=0, max_size=3))
        term = const(c)
        for f in factors:
            term = term * f
        out = out + term
    return out


@settings(max_examples=40, deadline=None)
@given(polys(), polys(), polys())
def test_ring_laws(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=30, deadline=None)
@given(polys())
def test_normalization_idempotent(p):
    assert DiffPolynomial.from_dict(dict(p.terms)) == p


@settings(max_examples=30, deadline=None)
@given(polys(), polys())
def test_leibniz_property(a, b):
    a = a.substitute_omega(ZERO)
    b = b.substitute_omega(ZERO)
    assert (a * b).dx() == a.dx() * b + a * b.dx()


@settings(max_examples=30, deadline=None)
@given(polys())
def test_omega_rewrite_consistency(p):
    x = p.substitute_omega(ZERO)  # strip the radical part
    assert (x * omega()) * omega() == x * omega_square()


@settings(max_examples=25, deadline=None)
@given(polys(), polys())
def test_evaluate_is_ring_homomorphism(a, b):
    bind = {
        (base, k): val
        for (base, k), val in {
            ("q", 0): 0.3 + 0.4j,
            ("q", 1): -0.2 + 0.1j,
            ("r", 0): 0.5 - 0.2j,
            ("r", 1): 0.1 + 0.3j,
            ("qt", 0): -0.4 + 0.2j,
            ("qt", 1): 0.2 - 0.5j,
            ("rt", 0): 0.6 + 0.1j,
            ("rt", 1): -0.3 - 0.2j,
        }.items()
    }
    params = {"beta": 0.7, "alpha_plus": 1.1, "alpha_minus": -0.7j,
              "alpha": 0.9, "gamma": 1.3}
    rad = omega_square().evaluate(bind, params)
    om = rad ** 0.5 if isinstance(rad, complex) else complex(rad) ** 0.5
    va = a.evaluate(bind, params, omega_value=om)
    vb = b.evaluate(bind, params, omega_value=om)
    vab = (a * b).evaluate(bind, params, omega_value=om)
    assert abs(vab - va * vb) <= 1e-12 * max(1.0, abs(va * vb))


# -- substitutions ----------------------------------------------------------------


def test_substitute_param():
    p = param("alpha_minus", 2) + param("alpha_minus") * q
    out = p.substitute_param("alpha_minus", gr(0, -1), "beta")
    assert out == param("beta", 2).scale(-1) + (param("beta") * q).scale(gr(0, -1))


def test_substitute_family_rename_and_const():
    p = r * rx + qt
    class2 = p.substitute_family("r", new_base="q", scale=gr(-1))
    assert class2 == q * qx + qt
    class3 = (r * q + rx).substitute_family("r", const=gr(1))
    assert class3 == q


def test_conjugation_map():
    p = q * rt.scale(gr(0, 2))
    out = p.conjugate_class1(-1)
    assert out == (r * qt).scale(gr(0, -2))
    # involution
    assert out.conjugate_class1(-1) == p
    assert omega().conjugate_class1(1) == omega().scale(-1)


def test_tilde_swap_involution():
    p = q * rt + qx * param("beta")
    assert p.tilde_swap().tilde_swap() == p


# -- serialization ----------------------------------------------------------------


def test_text_roundtrip():
    p = (q * r * r).scale(gr(Fraction(3, 2))) - rx + omega().scale(gr(0, -1))
    assert from_text(to_text(p)) == p
    assert to_text(ZERO) == "0"
    assert from_text("0") == ZERO


def test_text_form_matches_convention():
    # canonical order: q-family factors sort before the r family
    assert to_text(-rx + q * r * r) == "q*r^2 + (-1)*r_x"
    assert from_text("(-1)*r_x + q*r^2") == from_text("q*r^2 + (-1)*r_x")


def test_json_roundtrip():
    p = q * gen("q", 5) + param("gamma", 3).scale(gr(1, 1))
    blob = json.dumps(to_json_dict(p))
    assert from_json_dict(json.loads(blob)) == p


# -- calculus ----------------------------------------------------------------------


def test_euler_operator_kills_exact():
    h = q * q * rx + qt * gen("qt", 2)
    p = h.dx()
    assert is_dx_exact(p)
    assert dx_antiderivative(p) is not None
    assert dx_antiderivative(p).dx() == p


def test_euler_detects_nonexact():
    assert not is_dx_exact(q * rx)
    assert not is_dx_exact(const(3))
    with pytest.raises(NotExactError):
        dx_antiderivative(q * rx)


def test_antiderivative_self_product():
    p = (q * qx).scale(4)  # = D_x(2 q^2)
    assert dx_antiderivative(p).dx() == p


def test_total_t_derivative_chain():
    eom = {"q": q * q, "r": ZERO}
    p = qx * q
    out = total_t_derivative(p, eom)
    assert out == (q * q).dx() * q + qx * q * q
