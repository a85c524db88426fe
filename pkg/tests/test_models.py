"""Model registry: zero curvature, symmetry, boundary behavior, reductions."""

import pytest

from defectcharges.algebra import gen, gr, omega, param, to_text
from defectcharges.models import (
    apply_reduction,
    check_boundary_behavior,
    check_v_symmetry,
    get_model,
    model_info,
    register_builtin_models,
    registry,
    zero_curvature_residual,
    reduced_v,
)
from defectcharges.series import LaurentSeries, MatrixSeries


def test_registry_has_nine_models():
    assert len(register_builtin_models()) == 9
    assert set(registry()) == {
        "nls-focusing", "nls-defocusing", "mkdv-plus", "mkdv-minus",
        "sg", "liouville", "kdv-plus", "kdv-minus", "dnls",
    }


@pytest.mark.parametrize("name", sorted(registry()))
def test_zero_curvature_exact(name):
    res = zero_curvature_residual(get_model(name))
    assert res.is_zero


def test_tampered_nls_fails_with_order():
    m = get_model("nls-focusing")
    b = m.v_matrix[0, 1]
    tampered = LaurentSeries.from_dict(
        {**dict(b.coeffs), 1: gen("q").scale(3)}, b.floor
    )
    v = MatrixSeries.of(m.v_matrix[0, 0], tampered, m.v_matrix[1, 0], m.v_matrix[1, 1])
    res = zero_curvature_residual(m, v_override=v)
    assert not res.is_zero
    assert res.first_nonzero_order() is not None
    assert res.first_nonzero_order() >= 1


def test_nls_eom_is_schrodinger():
    m = get_model("nls-focusing")
    q, r = gen("q"), gen("r")
    assert m.eom["q"] == (gen("q", 2) - (q * q * r).scale(2)).scale(gr(0, 1))


@pytest.mark.parametrize("name", sorted(registry()))
def test_v_symmetry_and_boundary(name):
    m = get_model(name)
    assert check_v_symmetry(m)
    assert check_boundary_behavior(m)


def test_kdv_reduced_v_entries():
    """After r -> eps the third-flow V reproduces the KdV listing
    (with the zero-curvature-consistent C = 4 eps lambda^2 + 2u)."""
    m = get_model("kdv-plus")
    v = reduced_v(m)
    q = gen("q")
    a = v[0, 0]
    assert a.coeff(3) == gen("q").scale(0) + gr(0, -4) * 0 + _c(gr(0, -4))
    assert a.coeff(1) == q.scale(gr(0, -2))
    assert a.coeff(0) == gen("q", 1)
    c = v[1, 0]
    assert c.coeff(2) == _c(gr(4))
    assert c.coeff(0) == q.scale(2)
    b = v[0, 1]
    assert b.coeff(0) == (q * q).scale(2) - gen("q", 2)


def _c(x):
    from defectcharges.algebra import const

    return const(x)


def test_apply_reduction_class_examples():
    q, r = gen("q"), gen("r")
    # class III: r_x -> 0
    kdv = get_model("kdv-plus")
    assert apply_reduction(kdv, gen("r", 1)).is_zero
    # class III sigma3 twist: entries of the defect matrix
    assert apply_reduction(kdv, gen("rt")) == _c(gr(-1))
    assert apply_reduction(kdv, gen("qt")) == gen("qt").scale(-1)
    # class II: q*r -> eps u^2
    mkdv = get_model("mkdv-minus")
    assert apply_reduction(mkdv, q * r) == (q * q).scale(-1)
    # class I leaves (q, r) polynomials alone (r reads as eps*u^*)
    nls = get_model("nls-focusing")
    assert apply_reduction(nls, q * r) == q * r
    # parameter specialization alpha_minus -> -i*beta
    assert apply_reduction(nls, param("alpha_minus")) == param("beta").scale(gr(0, -1))


def test_dispersion_values():
    assert to_text(get_model("nls-focusing").dispersion.coeff(2)) == "(-2i)"
    assert to_text(get_model("mkdv-plus").dispersion.coeff(3)) == "(-4i)"
    assert to_text(get_model("sg").dispersion.coeff(-1)) == "(1/4i)"
    assert to_text(get_model("dnls").dispersion.coeff(4)) == "(-2i)"


def test_model_info_serializes():
    info = model_info(get_model("nls-focusing"))
    assert info["name"] == "nls-focusing"
    assert "V" in info and "11" in info["V"]
    import json

    json.dumps(info)  # must be JSON-ready
