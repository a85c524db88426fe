"""Laurent series and 2x2 matrix series."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from defectcharges.algebra import const, gen, gr, param, to_text
from defectcharges.errors import NotUnitSeriesError, SingularLeadingTermError
from defectcharges.series import (
    LaurentSeries,
    MatrixSeries,
    const_series,
    monomial_series,
    one_series,
    zero_series,
)

q = gen("q")
beta = param("beta")


def test_single_term_product():
    a = monomial_series(-1, gen("q"))
    b = monomial_series(-1, gen("r"))
    prod = a * b
    assert prod.coeff(-2) == gen("q") * gen("r")
    assert prod.exact


def test_geometric_truncation():
    f1 = one_series() + monomial_series(-1, q)
    f2 = one_series() - monomial_series(-1, q) + monomial_series(-2, q * q)
    out = (f1 * f2).truncate(-2)
    assert out.coeff(0) == const(1)
    assert out.coeff(-1).is_zero and out.coeff(-2).is_zero
    assert out.trunc_order == 2


def test_add_disjoint_support():
    a = monomial_series(-1, q)
    b = monomial_series(-3, beta)
    s = a + b
    assert s.coeff(-1) == q and s.coeff(-3) == beta


def test_log_mercator():
    s = one_series() + monomial_series(-1, beta)
    lg = s.log(3)
    assert lg.coeff(-1) == beta
    assert lg.coeff(-2) == (beta * beta).scale(gr(Fraction(-1, 2)))
    assert lg.coeff(-3) == (beta * beta * beta).scale(gr(Fraction(1, 3)))


def test_log_of_unit_is_zero():
    assert one_series().log(4).is_zero


def test_log_single_term_below_square_threshold():
    s = one_series() + monomial_series(-2, beta)
    lg = s.log(3)
    assert lg.coeff(-2) == beta
    assert lg.coeff(-1).is_zero and lg.coeff(-3).is_zero


def test_log_requires_unit():
    with pytest.raises(NotUnitSeriesError):
        (const_series(2) + monomial_series(-1, q)).log(3)
    with pytest.raises(NotUnitSeriesError):
        (one_series() + monomial_series(1, q)).log(3)


def test_exp_log_roundtrip_exact():
    s = one_series() + monomial_series(-1, q) + monomial_series(-2, beta * q)
    lg = s.log(5)
    back = lg.exp_unit(5)
    diff = back - s
    assert diff.is_zero


def test_reciprocal_two_sided():
    s = one_series() + monomial_series(-1, q) + monomial_series(-2, beta)
    inv = s.reciprocal(6)
    prod = (s * inv).truncate(-6)
    assert prod.coeff(0) == const(1)
    assert all(prod.coeff(-k).is_zero for k in range(1, 7))


def test_reciprocal_rejects_field_leading_term():
    s = monomial_series(0, q) + monomial_series(-1, beta)
    with pytest.raises(SingularLeadingTermError):
        s.reciprocal(3)


def test_sigma3_squares_to_identity():
    s3 = MatrixSeries.sigma3()
    assert (s3 * s3 - MatrixSeries.identity()).is_zero


def _random_matrix(seed_polys):
    a, b, c, d = seed_polys
    return MatrixSeries.of(
        one_series() + monomial_series(-1, a),
        monomial_series(-1, b),
        monomial_series(-1, c),
        one_series() + monomial_series(-1, d),
    )


_gens = st.sampled_from([gen("q"), gen("r"), gen("qt"), param("beta"), const(2)])


@settings(max_examples=20, deadline=None)
@given(st.tuples(_gens, _gens, _gens, _gens), st.tuples(_gens, _gens, _gens, _gens))
def test_det_multiplicative(p1, p2):
    m1, m2 = _random_matrix(p1), _random_matrix(p2)
    lhs = (m1 * m2).det()
    rhs = m1.det() * m2.det()
    assert (lhs - rhs).is_zero


@settings(max_examples=10, deadline=None)
@given(st.tuples(_gens, _gens, _gens, _gens))
def test_matrix_inverse_two_sided(p):
    m = _random_matrix(p)
    inv = m.inverse(5)
    left = (m * inv - MatrixSeries.identity()).map(lambda s: s.truncate(-5))
    right = (inv * m - MatrixSeries.identity()).map(lambda s: s.truncate(-5))
    assert left.is_zero and right.is_zero


def test_defect_det_example():
    """det(1 + L1/lambda) for class I: 1 + alpha_plus/lambda +
    (alpha_plus^2 + beta^2)/(4 lambda^2) once alpha_minus = -i*beta."""
    from defectcharges.defects import DefectSpec, symbolic_det

    d = DefectSpec(defect_class="I", x0=0.0, alpha_plus=0.5, beta_or_alpha=2.0)
    det = symbolic_det(d)
    det_b = LaurentSeries.from_dict(
        {
            e: p.substitute_param("alpha_minus", gr(0, -1), "beta")
            for e, p in det.coeffs
        },
        det.floor,
    )
    ap = param("alpha_plus")
    expected_2 = (ap * ap + param("beta", 2)).scale(gr(Fraction(1, 4)))
    assert det_b.coeff(0) == const(1)
    assert det_b.coeff(-1) == ap
    assert det_b.coeff(-2) == expected_2
    # no field generators anywhere
    assert all(not p.generators() for _, p in det_b.coeffs)
