"""Registry of the built-in integrable models.

Each model is stored in the general two-field (q, r) form of its Lax pair;
the reduction class records how the physical field u realizes (q, r):

    class I    q = u,  r = eps * u~   (complex u; u~ means the conjugate)
    class II   q = u,  r = eps * u    (real u)
    class III  q = u,  r = eps        (real u; the tilde half of a defect
                                       problem is sigma3-twisted, so ring
                                       generators qt, rt stand for -u~, -eps)

The light-cone models (sine-Gordon, Liouville) have trigonometric V matrices
that live outside the polynomial ring; their exact symbolic checks run in the
closure ring of :mod:`defectcharges.lightcone`, and only their bulk charge
content (polynomial in u) uses the main ring.

Every registered model must produce an exactly vanishing zero-curvature
residual; the equations of motion and a couple of matrix entries in the
source the spec data was transcribed from fail that test as printed, and the
forms here are the zero-curvature-consistent ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from . import lightcone
from .algebra.numbers import GaussianRational, gr
from .algebra.polynomial import DiffPolynomial, ZERO, const, gen, param
from .errors import UnknownClassError
from .series import (
    LaurentSeries,
    MatrixSeries,
    monomial_series,
    one_series,
    zero_series,
)

_I = gr(0, 1)
_MI = gr(0, -1)

MODEL_NAMES = (
    "nls-focusing",
    "nls-defocusing",
    "mkdv-plus",
    "mkdv-minus",
    "sg",
    "liouville",
    "kdv-plus",
    "kdv-minus",
    "dnls",
)


@dataclass(frozen=True)
class ModelSpec:
    name: str
    scheme: str  # "AKNS" or "KN"
    reduction_class: str  # "I", "II", "III", "none"
    epsilon: int
    lightcone: bool
    v_polarity: str  # "lambda" or "inverse"
    u_matrix: MatrixSeries
    v_matrix: Optional[MatrixSeries]  # None for light-cone models
    eom: Dict[str, DiffPolynomial]  # t-derivatives of the q / r families
    dispersion: LaurentSeries  # omega(lambda); empty for Liouville
    boundary_exempt: bool = False
    potential_substitution: Optional[str] = None
    lightcone_data: Optional[lightcone.LightconeModel] = None

    def physical_equation(self) -> str:
        return _PHYSICAL_EQ[self.name]


_PHYSICAL_EQ = {
    "nls-focusing": "i u_t + u_xx = 2 eps |u|^2 u  (eps = -1)",
    "nls-defocusing": "i u_t + u_xx = 2 eps |u|^2 u  (eps = +1)",
    "mkdv-plus": "u_t - 6 eps u^2 u_x + u_xxx = 0  (eps = +1)",
    "mkdv-minus": "u_t - 6 eps u^2 u_x + u_xxx = 0  (eps = -1)",
    "sg": "v_xt = sin v  (light cone, u = -v_x/2)",
    "liouville": "v_xt = 2 e^v  (light cone, u = v_x/2)",
    "kdv-plus": "u_t - 6 eps u u_x + u_xxx = 0  (eps = +1)",
    "kdv-minus": "u_t - 6 eps u u_x + u_xxx = 0  (eps = -1)",
    "dnls": "i u_t + u_xx = i eps (|u|^2 u)_x",
}


def akns_u_matrix() -> MatrixSeries:
    """U = -i*lambda*sigma3 + W with W off-diagonal (q, r)."""
    return MatrixSeries.of(
        monomial_series(1, const(_MI)),
        monomial_series(0, gen("q")),
        monomial_series(0, gen("r")),
        monomial_series(1, const(_I)),
    )


def kn_u_matrix() -> MatrixSeries:
    """U = -i*lambda^2*sigma3 + lambda*W."""
    return MatrixSeries.of(
        monomial_series(2, const(_MI)),
        monomial_series(1, gen("q")),
        monomial_series(1, gen("r")),
        monomial_series(2, const(_I)),
    )


def _v_from_abc(a: LaurentSeries, b: LaurentSeries, c: LaurentSeries) -> MatrixSeries:
    return MatrixSeries.of(a, b, c, a.scale(gr(-1)))


def _nls_v() -> MatrixSeries:
    q, r = gen("q"), gen("r")
    qx, rx = gen("q", 1), gen("r", 1)
    a = monomial_series(2, const(gr(0, -2))) + monomial_series(0, (q * r).scale(_MI))
    b = monomial_series(1, q.scale(2)) + monomial_series(0, qx.scale(_I))
    c = monomial_series(1, r.scale(2)) + monomial_series(0, rx.scale(_MI))
    return _v_from_abc(a, b, c)


def _third_flow_v() -> MatrixSeries:
    """The common third AKNS flow (mKdV in class II, KdV in class III)."""
    q, r = gen("q"), gen("r")
    qx, rx = gen("q", 1), gen("r", 1)
    qxx, rxx = gen("q", 2), gen("r", 2)
    a = (
        monomial_series(3, const(gr(0, -4)))
        + monomial_series(1, (q * r).scale(gr(0, -2)))
        + monomial_series(0, qx * r - q * rx)
    )
    b = (
        monomial_series(2, q.scale(4))
        + monomial_series(1, qx.scale(gr(0, 2)))
        + monomial_series(0, q * q * r * const(2) - qxx)
    )
    c = (
        monomial_series(2, r.scale(4))
        + monomial_series(1, rx.scale(gr(0, -2)))
        + monomial_series(0, q * r * r * const(2) - rxx)
    )
    return _v_from_abc(a, b, c)


def _dnls_v() -> MatrixSeries:
    q, r = gen("q"), gen("r")
    qx, rx = gen("q", 1), gen("r", 1)
    a = monomial_series(4, const(gr(0, -2))) + monomial_series(2, (q * r).scale(_MI))
    b = (
        monomial_series(3, q.scale(2))
        + monomial_series(1, qx.scale(_I) + q * q * r)
    )
    c = (
        monomial_series(3, r.scale(2))
        + monomial_series(1, rx.scale(_MI) + q * r * r)
    )
    return _v_from_abc(a, b, c)


def _nls_eom() -> Dict[str, DiffPolynomial]:
    q, r = gen("q"), gen("r")
    return {
        "q": (gen("q", 2) - q * q * r * const(2)).scale(_I),
        "r": (gen("r", 2) - q * r * r * const(2)).scale(_MI),
    }


def _third_flow_eom() -> Dict[str, DiffPolynomial]:
    q, r = gen("q"), gen("r")
    return {
        "q": -gen("q", 3) + (q * gen("q", 1) * r).scale(6),
        "r": -gen("r", 3) + (q * r * gen("r", 1)).scale(6),
    }


def _dnls_eom() -> Dict[str, DiffPolynomial]:
    q, r = gen("q"), gen("r")
    return {
        "q": gen("q", 2).scale(_I) + (q * q * r).dx(),
        "r": gen("r", 2).scale(_MI) + (q * r * r).dx(),
    }


def _disp(exponent: int, coeff: GaussianRational) -> LaurentSeries:
    return monomial_series(exponent, const(coeff))


def register_builtin_models() -> Tuple[ModelSpec, ...]:
    """Construct all nine built-in models."""
    akns_u = akns_u_matrix()
    nls_v = _nls_v()
    third_v = _third_flow_v()
    models = [
        ModelSpec(
            name="nls-focusing", scheme="AKNS", reduction_class="I", epsilon=-1,
            lightcone=False, v_polarity="lambda", u_matrix=akns_u, v_matrix=nls_v,
            eom=_nls_eom(), dispersion=_disp(2, gr(0, -2)),
        ),
        ModelSpec(
            name="nls-defocusing", scheme="AKNS", reduction_class="I", epsilon=1,
            lightcone=False, v_polarity="lambda", u_matrix=akns_u, v_matrix=nls_v,
            eom=_nls_eom(), dispersion=_disp(2, gr(0, -2)),
        ),
        ModelSpec(
            name="mkdv-plus", scheme="AKNS", reduction_class="II", epsilon=1,
            lightcone=False, v_polarity="lambda", u_matrix=akns_u, v_matrix=third_v,
            eom=_third_flow_eom(), dispersion=_disp(3, gr(0, -4)),
        ),
        ModelSpec(
            name="mkdv-minus", scheme="AKNS", reduction_class="II", epsilon=-1,
            lightcone=False, v_polarity="lambda", u_matrix=akns_u, v_matrix=third_v,
            eom=_third_flow_eom(), dispersion=_disp(3, gr(0, -4)),
        ),
        ModelSpec(
            name="sg", scheme="AKNS", reduction_class="II", epsilon=-1,
            lightcone=True, v_polarity="inverse", u_matrix=akns_u, v_matrix=None,
            eom={}, dispersion=_disp(-1, gr(0, Fraction(1, 4))),
            potential_substitution="u = -v_x/2",
            lightcone_data=lightcone.build_sg(),
        ),
        ModelSpec(
            name="liouville", scheme="AKNS", reduction_class="II", epsilon=1,
            lightcone=True, v_polarity="inverse", u_matrix=akns_u, v_matrix=None,
            eom={}, dispersion=zero_series(), boundary_exempt=True,
            potential_substitution="u = v_x/2",
            lightcone_data=lightcone.build_liouville(),
        ),
        ModelSpec(
            name="kdv-plus", scheme="AKNS", reduction_class="III", epsilon=1,
            lightcone=False, v_polarity="lambda", u_matrix=akns_u, v_matrix=third_v,
            eom=_third_flow_eom(), dispersion=_disp(3, gr(0, -4)),
            potential_substitution="u = q_x (potential comparison)",
        ),
        ModelSpec(
            name="kdv-minus", scheme="AKNS", reduction_class="III", epsilon=-1,
            lightcone=False, v_polarity="lambda", u_matrix=akns_u, v_matrix=third_v,
            eom=_third_flow_eom(), dispersion=_disp(3, gr(0, -4)),
            potential_substitution="u = q_x (potential comparison)",
        ),
        ModelSpec(
            name="dnls", scheme="KN", reduction_class="I", epsilon=1,
            lightcone=False, v_polarity="lambda", u_matrix=kn_u_matrix(),
            v_matrix=_dnls_v(), eom=_dnls_eom(), dispersion=_disp(4, gr(0, -2)),
        ),
    ]
    return tuple(models)


_REGISTRY: Optional[Dict[str, ModelSpec]] = None


def registry() -> Dict[str, ModelSpec]:
    global _REGISTRY
    if _REGISTRY is None:
        _REGISTRY = {m.name: m for m in register_builtin_models()}
    return _REGISTRY


def get_model(name: str) -> ModelSpec:
    try:
        return registry()[name]
    except KeyError:
        raise KeyError(
            f"unknown model {name!r}; known: {', '.join(MODEL_NAMES)}"
        ) from None


# -- reductions ---------------------------------------------------------------


def apply_reduction(m: ModelSpec, p: DiffPolynomial) -> DiffPolynomial:
    """Substitute the model's class reduction into a polynomial.

    Class I leaves the ring generators alone: (q, r, qt, rt) already read as
    (u, eps u*, u~, eps u~*).  Class II substitutes the r families by eps
    times the q families.  Class III sends r to the constant eps with all
    derivatives to zero and, because the sigma3 twist is always applied on
    the tilde side, sends rt to -eps and flips the sign of the qt family.
    The defect parameter alpha_minus becomes -i*beta (classes I, III) or
    -i*alpha (class II).
    """
    eps = gr(m.epsilon)
    cls = m.reduction_class
    if cls == "I":
        out = p
        out = out.substitute_param("alpha_minus", _MI, "beta")
        return out
    if cls == "II":
        out = p.substitute_family("r", new_base="q", scale=eps)
        out = out.substitute_family("rt", new_base="qt", scale=eps)
        name = "gamma" if m.name == "liouville" else "alpha"
        if m.name == "liouville":
            # degenerate defect: alpha_minus = 0
            out = out.substitute_param("alpha_minus", gr(0))
        else:
            out = out.substitute_param("alpha_minus", _MI, name)
        out = out.substitute_param("alpha_plus", gr(0))
        return out
    if cls == "III":
        out = p.substitute_family("r", const=eps)
        out = out.substitute_family("rt", const=-eps)
        out = out.substitute_family("qt", new_base="qt", scale=gr(-1))
        out = out.substitute_param("alpha_minus", _MI, "beta")
        out = out.substitute_param("alpha_plus", gr(0))
        return out
    if cls == "none":
        return p
    raise UnknownClassError(cls)


def reduction_conjugate(p: DiffPolynomial, epsilon: int) -> DiffPolynomial:
    """Complex-conjugate image under the class-I dictionary r = eps*u^*."""
    return p.conjugate_class1(epsilon)


# -- zero curvature -----------------------------------------------------------


@dataclass(frozen=True)
class ZeroCurvatureResidual:
    """Residual of U_t - V_x + [U, V]; exactly zero for a registered model."""

    matrix: Optional[MatrixSeries]  # polynomial models
    lightcone_parts: Optional[Dict[int, lightcone.Matrix]]  # light-cone models

    @property
    def is_zero(self) -> bool:
        if self.matrix is not None:
            return self.matrix.is_zero
        return all(lightcone.mat_is_zero(m) for m in self.lightcone_parts.values())

    def first_nonzero_order(self) -> Optional[int]:
        if self.matrix is not None:
            orders = set()
            for i in (0, 1):
                for j in (0, 1):
                    for e, poly in self.matrix[i, j].coeffs:
                        if not poly.is_zero:
                            orders.add(e)
            return max(orders) if orders else None
        for e, mtx in sorted(self.lightcone_parts.items(), reverse=True):
            if not lightcone.mat_is_zero(mtx):
                return e
        return None


def zero_curvature_residual(
    m: ModelSpec, v_override: Optional[MatrixSeries] = None
) -> ZeroCurvatureResidual:
    """Compute U_t - V_x + [U, V] symbolically.

    `v_override` supports tamper tests: a perturbed V produces a nonzero
    residual whose leading lambda order is reported.
    """
    if m.lightcone:
        return ZeroCurvatureResidual(
            matrix=None,
            lightcone_parts=lightcone.zero_curvature_residual(m.lightcone_data),
        )
    v = v_override if v_override is not None else m.v_matrix
    from .algebra.calculus import total_t_derivative

    ut = m.u_matrix.map(
        lambda s: s.map(lambda poly: total_t_derivative(poly, m.eom))
    )
    residual = ut - v.map(lambda s: s.dx()) + m.u_matrix.commutator(v)
    return ZeroCurvatureResidual(matrix=residual, lightcone_parts=None)


def check_v_symmetry(m: ModelSpec) -> bool:
    """Class I/II symmetry B(lambda) = eps * C^*(lambda^*), structurally."""
    if m.v_matrix is None or m.reduction_class not in ("I", "II"):
        return True
    b = m.v_matrix[0, 1]
    c = m.v_matrix[1, 0]
    eps = m.epsilon
    mapped = LaurentSeries.from_dict(
        {e: reduction_conjugate(p, eps).scale(gr(eps)) for e, p in c.coeffs},
        c.floor,
    )
    return (b - mapped).is_zero


def check_boundary_behavior(m: ModelSpec) -> bool:
    """V with fields set to zero must equal omega(lambda) * sigma3."""
    if m.boundary_exempt:
        return True
    if m.lightcone:
        # vacuum v = 0: c -> 1, s -> 0 entrywise
        lc = m.lightcone_data
        vac = []
        for i in (0, 1):
            for j in (0, 1):
                val = gr(0)
                for (uf, cp, sp, ep), co in lc.v1[i][j].terms:
                    if uf or sp or ep:
                        continue
                    val = val + co
                vac.append(val)
        omega_c = None
        for e, pm in m.dispersion.coeffs:
            omega_c = pm.constant_term()
        return (
            vac[0] == omega_c
            and vac[1].is_zero
            and vac[2].is_zero
            and vac[3] == -omega_c
        )
    zeroed = m.v_matrix.map(
        lambda s: LaurentSeries.from_dict(
            {
                e: p.substitute_family("q", const=gr(0)).substitute_family(
                    "r", const=gr(0)
                )
                for e, p in s.coeffs
            },
            s.floor,
        )
    )
    expected = MatrixSeries.of(
        m.dispersion,
        zero_series(),
        zero_series(),
        m.dispersion.scale(gr(-1)),
    )
    return (zeroed - expected).is_zero


def reduced_v(m: ModelSpec) -> Optional[MatrixSeries]:
    """The model's V with the class reduction substituted (for display)."""
    if m.v_matrix is None:
        return None
    return m.v_matrix.map(
        lambda s: LaurentSeries.from_dict(
            {e: apply_reduction(m, p) for e, p in s.coeffs}, s.floor
        )
    )


def model_info(m: ModelSpec) -> Dict[str, object]:
    """JSON-ready description of a registered model."""
    from .algebra.textform import to_text

    info: Dict[str, object] = {
        "name": m.name,
        "scheme": m.scheme,
        "reduction_class": m.reduction_class,
        "epsilon": m.epsilon,
        "lightcone": m.lightcone,
        "v_polarity": m.v_polarity,
        "equation": m.physical_equation(),
        "eom": {k: to_text(v) for k, v in m.eom.items()},
        "dispersion": {str(e): to_text(p) for e, p in m.dispersion.coeffs},
    }
    if m.potential_substitution:
        info["potential_substitution"] = m.potential_substitution
    if m.v_matrix is not None:
        info["V"] = {
            f"{i}{j}": {str(e): to_text(p) for e, p in m.v_matrix[i, j].coeffs}
            for i in (0, 1)
            for j in (0, 1)
        }
    return info
