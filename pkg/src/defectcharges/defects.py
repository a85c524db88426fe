"""Defect specifications, defect matrices and their algebraic identities.

The N=1 defect matrix is L = 1 + L1/lambda with

    L1 = [[ (alpha_plus + Omega)/2,  -(i/2)(qt - q) ],
          [  (i/2)(rt - r),          (alpha_plus - Omega)/2 ]]

in the general ring; Omega is the radical generator.  Class reductions and
the class-III sigma3 twist are interpretation maps on the generators (see
models.apply_reduction), so a single construction serves all classes.  The
sign branch of the radical lives in the numeric value of Omega, seeded by
DefectSpec.sign_branch and tracked continuously along a scenario.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra.numbers import GaussianRational, gr
from .algebra.polynomial import (
    Bindings,
    DiffPolynomial,
    const,
    gen,
    omega,
    param,
)
from .errors import (
    DegenerateEigenvaluesError,
    InvalidParamsError,
    OverlappingDefectsError,
    WrongPolarityError,
)
from .models import ModelSpec, apply_reduction
from .series import (
    LaurentSeries,
    MatrixSeries,
    monomial_series,
    one_series,
    zero_series,
)

_I = gr(0, 1)
_HALF = GaussianRational(Fraction(1, 2), Fraction(0))
_IHALF = GaussianRational(Fraction(0), Fraction(1, 2))


@dataclass(frozen=True)
class DefectSpec:
    """Parameters of one frozen-Backlund defect."""

    defect_class: str  # "I", "II", "III"
    x0: float
    alpha_plus: float = 0.0
    beta_or_alpha: float = 1.0
    sign_branch: int = 1
    epsilon: int = -1
    liouville: bool = False

    def __post_init__(self):
        if self.defect_class not in ("I", "II", "III"):
            raise InvalidParamsError(f"unknown defect class {self.defect_class!r}")
        if self.defect_class in ("II", "III") and self.alpha_plus != 0.0:
            raise InvalidParamsError("alpha_plus is forced to 0 for classes II/III")
        if self.sign_branch not in (-1, 1):
            raise InvalidParamsError("sign_branch must be +1 or -1")
        if self.epsilon not in (-1, 1):
            raise InvalidParamsError("epsilon must be +1 or -1")
        if self.liouville and self.defect_class != "II":
            raise InvalidParamsError("the Liouville defect is a class-II defect")
        if self.liouville and self.beta_or_alpha == 0.0:
            raise InvalidParamsError("gamma must be nonzero for the Liouville defect")

    @property
    def sigma3_twist(self) -> bool:
        return self.defect_class == "III"

    def param_values(self) -> Dict[str, complex]:
        """Numeric values for the defect parameters.

        alpha_minus = -i * beta (classes I/III), -i * alpha (class II),
        0 for the degenerate Liouville defect.
        """
        am = 0j if self.liouville else complex(0, -self.beta_or_alpha)
        return {
            "alpha_plus": complex(self.alpha_plus),
            "alpha_minus": am,
            "beta": complex(self.beta_or_alpha),
            "alpha": complex(self.beta_or_alpha),
            "gamma": complex(self.beta_or_alpha),
        }

    def to_config_dict(self) -> Dict[str, object]:
        out: Dict[str, object] = {
            "class": self.defect_class,
            "alpha_plus": self.alpha_plus,
            "beta": self.beta_or_alpha,
            "sign": self.sign_branch,
            "epsilon": self.epsilon,
            "x0": self.x0,
        }
        if self.liouville:
            out["liouville"] = True
        return out

    @staticmethod
    def from_config_dict(d: Dict[str, object]) -> "DefectSpec":
        return DefectSpec(
            defect_class=str(d["class"]),
            x0=float(d["x0"]),
            alpha_plus=float(d.get("alpha_plus", 0.0)),
            beta_or_alpha=float(d.get("beta", 1.0)),
            sign_branch=int(d.get("sign", 1)),
            epsilon=int(d.get("epsilon", -1)),
            liouville=bool(d.get("liouville", False)),
        )


def defect_entries(d: DefectSpec) -> Tuple[DiffPolynomial, ...]:
    """(a1, a2, a3, a4) of L1 in the general ring."""
    om = omega()
    if d.defect_class == "I":
        ap = param("alpha_plus")
        a1 = (ap + om).scale(_HALF)
        a4 = (ap - om).scale(_HALF)
    else:
        a1 = om.scale(_HALF)
        a4 = om.scale(-_HALF)
    a2 = (gen("qt") - gen("q")).scale(-_IHALF)
    a3 = (gen("rt") - gen("r")).scale(_IHALF)
    return a1, a2, a3, a4


def build_defect_matrix(d: DefectSpec) -> MatrixSeries:
    """L = 1 + L1/lambda with general-ring entries."""
    a1, a2, a3, a4 = defect_entries(d)
    return MatrixSeries.of(
        one_series() + monomial_series(-1, a1),
        monomial_series(-1, a2),
        monomial_series(-1, a3),
        one_series() + monomial_series(-1, a4),
    )


def reduced_defect_matrix(m: ModelSpec, d: DefectSpec) -> MatrixSeries:
    """The defect matrix with the model's class reduction substituted."""
    L = build_defect_matrix(d)
    return L.map(
        lambda s: LaurentSeries.from_dict(
            {e: apply_reduction(m, p) for e, p in s.coeffs}, s.floor
        )
    )


# -- numeric bindings ----------------------------------------------------------


def side_bindings(
    m: ModelSpec,
    u_left: Sequence[complex],
    u_right: Sequence[complex],
) -> Bindings:
    """Bind (q, r) to the right-side and (qt, rt) to the left-side samples.

    Inputs are (u, u_x, u_xx, ...) per side; the class reduction fixes the r
    families, and class III stores the sigma3-twisted tilde fields.
    """
    eps = m.epsilon
    out: Dict[Tuple[str, int], complex] = {}
    cls = m.reduction_class
    for k, val in enumerate(u_right):
        out[("q", k)] = complex(val)
        if cls == "I":
            out[("r", k)] = eps * complex(val).conjugate()
        elif cls == "II":
            out[("r", k)] = eps * complex(val)
        elif cls == "III":
            out[("r", k)] = complex(eps) if k == 0 else 0j
    for k, val in enumerate(u_left):
        if cls == "III":
            out[("qt", k)] = -complex(val)
            out[("rt", k)] = complex(-eps) if k == 0 else 0j
        else:
            out[("qt", k)] = complex(val)
            if cls == "I":
                out[("rt", k)] = eps * complex(val).conjugate()
            else:
                out[("rt", k)] = eps * complex(val)
    return out


def omega_from_radicand(
    d: DefectSpec, bindings: Bindings, branch: Optional[int] = None
) -> complex:
    """Principal-branch radical value, for seeding continuous tracking."""
    from .algebra.polynomial import omega_square

    rad = omega_square().evaluate(bindings, d.param_values())
    return (branch if branch is not None else d.sign_branch) * cmath.sqrt(rad)


def evaluate_defect_matrix(
    d: DefectSpec,
    lam: complex,
    bindings: Bindings,
    omega_value: complex,
) -> List[List[complex]]:
    L = build_defect_matrix(d)
    return L.evaluate(lam, bindings, d.param_values(), omega_value=omega_value)


def det_constancy_witness(
    d: DefectSpec,
    lam: complex,
    binding_sets: Sequence[Bindings],
    omega_values: Sequence[complex],
) -> float:
    """Max |det L - det L(reference)| over the supplied samples."""
    dets = []
    for b, om in zip(binding_sets, omega_values):
        mtx = evaluate_defect_matrix(d, lam, b, om)
        dets.append(mtx[0][0] * mtx[1][1] - mtx[0][1] * mtx[1][0])
    ref = dets[0]
    return max(abs(z - ref) for z in dets)


def symbolic_det(d: DefectSpec) -> LaurentSeries:
    """det L = 1 + alpha_plus/lambda + alpha1*alpha2/lambda^2, exactly."""
    return build_defect_matrix(d).det()


# -- projector form -------------------------------------------------------------


@dataclass(frozen=True)
class ProjectorForm:
    """P = (L1 - alpha1)/(alpha2 - alpha1) described by Q = L1 - alpha1*Id.

    P itself needs division by alpha_minus, so the exact content is carried
    by Q together with the identity Q^2 + alpha_minus*Q = 0; the series
    builder below produces the rescaled inverse 1 - Q/(lambda + alpha2).
    """

    q_matrix: Tuple[Tuple[DiffPolynomial, DiffPolynomial], Tuple[DiffPolynomial, DiffPolynomial]]
    alpha1: DiffPolynomial
    alpha2: DiffPolynomial
    spec: DefectSpec

    def idempotency_residual(self) -> Tuple[Tuple[DiffPolynomial, ...], ...]:
        """Q^2 + alpha_minus*Q entrywise (zero iff P is a projector)."""
        q = self.q_matrix
        am = param("alpha_minus")
        out = []
        for i in (0, 1):
            row = []
            for j in (0, 1):
                acc = q[i][0] * q[0][j] + q[i][1] * q[1][j] + am * q[i][j]
                row.append(acc)
            out.append(tuple(row))
        return tuple(out)

    def inverse_numeric(
        self,
        lam: complex,
        bindings: Bindings,
        omega_value: complex,
    ) -> List[List[complex]]:
        """1 - Q/(lambda + alpha2) evaluated exactly (rational in lambda)."""
        params = self.spec.param_values()
        a2v = self.alpha2.evaluate({}, params)
        qv = [
            [
                self.q_matrix[i][j].evaluate(
                    bindings, params, omega_value=omega_value
                )
                for j in (0, 1)
            ]
            for i in (0, 1)
        ]
        return [
            [
                (1.0 if i == j else 0.0) - qv[i][j] / (lam + a2v)
                for j in (0, 1)
            ]
            for i in (0, 1)
        ]

    def inverse_series(self, order: int) -> MatrixSeries:
        """1 - Q/(lambda + alpha2) as a series to lambda^-order.

        This inverts the projector-normalized matrix
        L_proj = 1 + Q/(lambda + alpha1) = (lambda/(lambda+alpha1)) * L.
        """
        a2 = self.alpha2
        geom = zero_series()
        power = const(1)
        for k in range(order):
            geom = geom + monomial_series(-(k + 1), power)
            power = power * a2.scale(gr(-1))
        geom = LaurentSeries.from_dict(dict(geom.coeffs), -order)
        q = self.q_matrix
        ident = MatrixSeries.identity()
        minus_q_geom = MatrixSeries.of(
            geom.scale_poly(q[0][0]).scale(gr(-1)),
            geom.scale_poly(q[0][1]).scale(gr(-1)),
            geom.scale_poly(q[1][0]).scale(gr(-1)),
            geom.scale_poly(q[1][1]).scale(gr(-1)),
        )
        return ident + minus_q_geom


def projector_decompose(d: DefectSpec) -> ProjectorForm:
    if d.liouville:
        raise DegenerateEigenvaluesError(
            "alpha1 = alpha2 = 0 for the Liouville defect"
        )
    if d.defect_class != "I" and d.beta_or_alpha == 0.0:
        raise DegenerateEigenvaluesError("alpha1 = alpha2 (beta/alpha = 0)")
    a1, a2, a3, a4 = defect_entries(d)
    am, ap = param("alpha_minus"), param("alpha_plus")
    if d.defect_class == "I":
        alpha1 = (ap + am).scale(_HALF)
        alpha2 = (ap - am).scale(_HALF)
    else:
        alpha1 = am.scale(_HALF)
        alpha2 = am.scale(-_HALF)
    q_matrix = (
        (a1 - alpha1, a2),
        (a3, a4 - alpha1),
    )
    return ProjectorForm(q_matrix=q_matrix, alpha1=alpha1, alpha2=alpha2, spec=d)


# -- multi-defect composition ----------------------------------------------------


@dataclass(frozen=True)
class MultiDefectSpec:
    """N defects at strictly increasing locations, N+1 field regions."""

    defects: Tuple[DefectSpec, ...]

    def __post_init__(self):
        xs = [d.x0 for d in self.defects]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise OverlappingDefectsError(
                f"defect locations must strictly increase, got {xs}"
            )

    @property
    def locations(self) -> Tuple[float, ...]:
        return tuple(d.x0 for d in self.defects)


def compose_defects(defects: Sequence[DefectSpec]) -> MultiDefectSpec:
    return MultiDefectSpec(tuple(defects))


# -- numeric defect-condition residuals -----------------------------------------


def side_t_values(
    m: ModelSpec, u_left_t: complex, u_right_t: complex
) -> Dict[str, complex]:
    """t-derivatives of the four families from the per-side u_t samples."""
    eps = m.epsilon
    cls = m.reduction_class
    if cls == "I":
        return {
            "q": u_right_t,
            "r": eps * complex(u_right_t).conjugate(),
            "qt": u_left_t,
            "rt": eps * complex(u_left_t).conjugate(),
        }
    if cls == "II":
        return {
            "q": u_right_t,
            "r": eps * u_right_t,
            "qt": u_left_t,
            "rt": eps * u_left_t,
        }
    if cls == "III":
        return {"q": u_right_t, "r": 0j, "qt": -u_left_t, "rt": 0j}
    return {"q": u_right_t, "r": 0j, "qt": u_left_t, "rt": 0j}


def _entry_values(
    d: DefectSpec, bindings: Bindings, omega_value: complex
) -> Tuple[complex, complex, complex, complex]:
    params = d.param_values()
    a1p, a2p, a3p, a4p = defect_entries(d)
    ev = lambda p: p.evaluate(bindings, params, omega_value=omega_value)
    return ev(a1p), ev(a2p), ev(a3p), ev(a4p)


def defect_condition_residual_x(
    m: ModelSpec,
    d: DefectSpec,
    bindings: Bindings,
    omega_value: complex,
) -> Tuple[complex, complex]:
    """Residuals of a2_x = qt*a4 - q*a1 and a3_x = rt*a1 - r*a4.

    `bindings` must carry the order-0 and order-1 samples of all four
    families (use side_bindings)."""
    a1, a2, a3, a4 = _entry_values(d, bindings, omega_value)
    a2x = -0.5j * (bindings[("qt", 1)] - bindings[("q", 1)])
    a3x = 0.5j * (bindings[("rt", 1)] - bindings[("r", 1)])
    r2 = a2x - (bindings[("qt", 0)] * a4 - bindings[("q", 0)] * a1)
    r3 = a3x - (bindings[("rt", 0)] * a1 - bindings[("r", 0)] * a4)
    return r2, r3


def defect_condition_residual_a1a4(
    m: ModelSpec,
    d: DefectSpec,
    bindings: Bindings,
    omega_value: complex,
    omega_x_value: complex,
) -> Tuple[complex, complex]:
    """Residuals of the redundant a1/a4 x-equations (a1_x = qt*a3 - r*a2)."""
    a1, a2, a3, a4 = _entry_values(d, bindings, omega_value)
    r1 = 0.5 * omega_x_value - (bindings[("qt", 0)] * a3 - bindings[("r", 0)] * a2)
    r4 = -0.5 * omega_x_value - (bindings[("rt", 0)] * a2 - bindings[("q", 0)] * a3)
    return r1, r4


def _v0_values(m: ModelSpec, slot_values: Dict[Tuple[str, int], complex]):
    """(A0, B0, C0): the lambda^0 part of V on the given q/r slot samples."""
    a0 = m.v_matrix[0, 0].coeff(0).evaluate(slot_values)
    b0 = m.v_matrix[0, 1].coeff(0).evaluate(slot_values)
    c0 = m.v_matrix[1, 0].coeff(0).evaluate(slot_values)
    return a0, b0, c0


def defect_condition_residual_t(
    m: ModelSpec,
    d: DefectSpec,
    bindings: Bindings,
    t_values: Dict[str, complex],
    omega_value: complex,
    lightcone_point: Optional[Dict[str, complex]] = None,
    bt_sign: int = 1,
) -> Tuple[complex, complex]:
    """Residuals of the time-part defect conditions at one point.

    lambda-polynomial V: the a2/a3 equations with the lambda^0 coefficients
    of V read from the model.  lambda^-1 V (light-cone models): the displayed
    conditions; `lightcone_point` must then supply v, vt, v_t, vt_t (and the
    residual of the a2 equation against B~1 - B1 is returned second).
    """
    import math

    a1, a2, a3, a4 = _entry_values(d, bindings, omega_value)
    a2t = -0.5j * (t_values["qt"] - t_values["q"])
    a3t = 0.5j * (t_values["rt"] - t_values["r"])
    if m.v_polarity == "lambda":
        if m.v_matrix is None:
            raise WrongPolarityError("model has no polynomial V")
        right_slots = {
            (b, k): bindings[(b, k)] for (b, k) in bindings if b in ("q", "r")
        }
        left_slots = {
            ("q", k): v for (b, k), v in bindings.items() if b == "qt"
        }
        left_slots.update(
            {("r", k): v for (b, k), v in bindings.items() if b == "rt"}
        )
        a0, b0, c0 = _v0_values(m, right_slots)
        a0t, b0t, c0t = _v0_values(m, left_slots)
        r2 = a2t - ((a0t + a0) * a2 + b0t * a4 - b0 * a1)
        r3 = a3t - (-(a0t + a0) * a3 + c0t * a1 - c0 * a4)
        return r2, r3
    if lightcone_point is None:
        raise WrongPolarityError("light-cone t-residuals need the v data")
    v = lightcone_point["v"]
    vt = lightcone_point["vt"]
    v_t = lightcone_point["v_t"]
    vt_t = lightcone_point["vt_t"]
    p = d.beta_or_alpha
    if d.liouville:
        import cmath

        half = 0.5 * (vt + v)
        r1 = (vt_t + v_t) - bt_sign * (4.0 / p) * cmath.exp(
            -bt_sign * half
        ) * (cmath.exp(vt) - cmath.exp(v))
        b1_left = -0.5j * cmath.exp(vt)
        b1_right = -0.5j * cmath.exp(v)
    else:
        import cmath

        r1 = (vt_t + v_t) - bt_sign * (2.0 / p) * cmath.sin(0.5 * (vt - v))
        b1_left = 0.25j * cmath.sin(vt)
        b1_right = 0.25j * cmath.sin(v)
    r2 = a2t - (b1_left - b1_right)
    return r1, r2
