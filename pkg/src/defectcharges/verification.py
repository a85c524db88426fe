"""Named verification checks driven by the verify command/endpoint."""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from .algebra.numbers import gr
from .charges.conservation import conservation_residual
from .charges.gamma import (
    gamma_expand_akns,
    gamma_expand_kn,
    gamma_series,
    riccati_residual_x,
)
from .defects import (
    DefectSpec,
    build_defect_matrix,
    defect_condition_residual_x,
    projector_decompose,
)
from .models import (
    ModelSpec,
    check_boundary_behavior,
    check_v_symmetry,
    get_model,
    registry,
    zero_curvature_residual,
)
from .scenarios.builtin import builtin_scenarios, check_scenario
from .series import LaurentSeries, MatrixSeries, monomial_series


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    value: Optional[float] = None


def _zero_curvature_checks() -> List[CheckResult]:
    out = []
    for name, m in registry().items():
        res = zero_curvature_residual(m)
        out.append(
            CheckResult(
                name=f"zero-curvature/{name}",
                passed=res.is_zero,
                detail="residual matrix series is exactly zero"
                if res.is_zero
                else f"nonzero at lambda order {res.first_nonzero_order()}",
            )
        )
    return out


def _tampered_check() -> CheckResult:
    """NLS with B's linear-in-lambda coefficient changed 2 -> 3."""
    m = get_model("nls-focusing")
    from .algebra.polynomial import gen

    b = m.v_matrix[0, 1]
    tampered_b = LaurentSeries.from_dict(
        {**dict(b.coeffs), 1: gen("q").scale(3)}, b.floor
    )
    v = MatrixSeries.of(
        m.v_matrix[0, 0], tampered_b, m.v_matrix[1, 0], m.v_matrix[1, 1]
    )
    res = zero_curvature_residual(m, v_override=v)
    order = res.first_nonzero_order()
    return CheckResult(
        name="zero-curvature/tampered-nls",
        passed=not res.is_zero,
        detail=f"tampered model fails as expected at lambda order {order}"
        if not res.is_zero
        else "tampered model unexpectedly passed",
    )


def _conservation_checks(n_max: int = 5) -> List[CheckResult]:
    out = []
    for name, m in registry().items():
        orders = range(0, 4) if m.scheme == "KN" else range(1, n_max + 1)
        ok = True
        bad = None
        for n in orders:
            if not conservation_residual(m, n).is_zero:
                ok = False
                bad = n
                break
        out.append(
            CheckResult(
                name=f"bulk-conservation/{name}",
                passed=ok,
                detail="exact through the checked orders"
                if ok
                else f"nonzero residual at order {bad}",
            )
        )
    return out


def _riccati_checks() -> List[CheckResult]:
    out = []
    m = get_model("nls-focusing")
    ser = gamma_series(m, gamma_expand_akns(7))
    rx = riccati_residual_x(m, ser)
    out.append(
        CheckResult(
            name="riccati-x/akns",
            passed=rx.is_zero,
            detail="vanishes through the computed order",
        )
    )
    mk = get_model("dnls")
    serk = gamma_series(mk, gamma_expand_kn(5))
    rk = riccati_residual_x(mk, serk)
    out.append(
        CheckResult(
            name="riccati-x/kn",
            passed=rk.is_zero,
            detail="vanishes through the computed order",
        )
    )
    return out


def _model_structure_checks() -> List[CheckResult]:
    out = []
    for name, m in registry().items():
        out.append(
            CheckResult(
                name=f"v-symmetry/{name}",
                passed=check_v_symmetry(m),
                detail="B = eps C*(lambda*)",
            )
        )
        out.append(
            CheckResult(
                name=f"boundary-behavior/{name}",
                passed=check_boundary_behavior(m),
                detail="V(0 fields) = omega(lambda) sigma3"
                + (" (exempt)" if m.boundary_exempt else ""),
            )
        )
    return out


def _projector_checks() -> List[CheckResult]:
    out = []
    for cls, eps in (("I", -1), ("II", -1), ("III", 1)):
        d = DefectSpec(
            defect_class=cls,
            x0=0.0,
            alpha_plus=0.4 if cls == "I" else 0.0,
            beta_or_alpha=1.3,
            epsilon=eps,
        )
        pf = projector_decompose(d)
        res = pf.idempotency_residual()
        ok = all(res[i][j].is_zero for i in (0, 1) for j in (0, 1))
        out.append(
            CheckResult(
                name=f"projector-idempotent/class-{cls}",
                passed=ok,
                detail="Q^2 + alpha_minus Q = 0 exactly",
            )
        )
        # numeric L * L^-1 at sample lambdas (exact rational inverse)
        L = build_defect_matrix(d)
        worst = 0.0
        bind = {
            ("q", 0): 0.3 + 0.1j,
            ("r", 0): eps * (0.3 - 0.1j) if cls == "I" else (eps * 0.3 + 0j),
            ("qt", 0): -0.2 + 0.4j,
            ("rt", 0): eps * (-0.2 - 0.4j) if cls == "I" else (eps * -0.2 + 0j),
        }
        if cls != "I":
            bind[("q", 0)] = 0.3 + 0j
            bind[("qt", 0)] = -0.2 + 0j
        if cls == "III":
            bind[("r", 0)] = complex(eps)
            bind[("rt", 0)] = complex(-eps)
        params = d.param_values()
        from .algebra.polynomial import omega_square

        rad = omega_square().evaluate(bind, params)
        om = cmath.sqrt(rad)
        a1v = complex(params["alpha_plus"] + params["alpha_minus"]) / 2.0
        for lam in (2.0, 3.0, 2.5 + 0.5j, -4.0, 5.0):
            lm = np.array(
                L.evaluate(lam, bind, params, omega_value=om), dtype=complex
            )
            li = np.array(
                pf.inverse_numeric(lam, bind, om), dtype=complex
            )
            # the closed form inverts lambda/(lambda+alpha1) * L
            lm_proj = lm * (lam / (lam + a1v))
            worst = max(worst, float(np.linalg.norm(lm_proj @ li - np.eye(2))))
        out.append(
            CheckResult(
                name=f"projector-inverse/class-{cls}",
                passed=worst < 1e-10,
                detail=f"max |L L^-1 - 1| = {worst:.2e} at 5 lambda samples",
                value=worst,
            )
        )
    return out


def _scenario_checks(tolerance: float = 1e-8) -> List[CheckResult]:
    out = []
    for s in builtin_scenarios():
        res = check_scenario(s, n_points=10)
        worst = max(res.values())
        out.append(
            CheckResult(
                name=f"scenario-admission/{s.name}",
                passed=worst < tolerance,
                detail=", ".join(f"{k}={v:.1e}" for k, v in res.items()),
                value=worst,
            )
        )
        # determinant constancy over (x, t) at 3 lambda samples
        m = s.model
        worst_det = 0.0
        for lam in (1.0, 2.0 + 1.0j, 0.5):
            for k, d in enumerate(s.defects):
                dets = []
                for x in np.linspace(s.x_min / 4, s.x_max / 4, 7):
                    for t in np.linspace(0.0, s.t_final, 5):
                        bind = s.pair_bindings(k, float(x), float(t), order=1)
                        om = s.omega_fns[k](float(x), float(t))
                        from .defects import evaluate_defect_matrix

                        mtx = evaluate_defect_matrix(d, lam, bind, om)
                        dets.append(
                            mtx[0][0] * mtx[1][1] - mtx[0][1] * mtx[1][0]
                        )
                worst_det = max(
                    worst_det, max(abs(z - dets[0]) for z in dets)
                )
        out.append(
            CheckResult(
                name=f"det-constancy/{s.name}",
                passed=worst_det < 1e-10,
                detail=f"max |det L - det L(ref)| = {worst_det:.2e}",
                value=worst_det,
            )
        )
    return out


CHECK_GROUPS: Dict[str, Callable[[], List[CheckResult]]] = {
    "zero-curvature": _zero_curvature_checks,
    "bulk-conservation": _conservation_checks,
    "riccati": _riccati_checks,
    "model-structure": _model_structure_checks,
    "projector": _projector_checks,
    "scenarios": _scenario_checks,
}


def run_checks(
    groups: Optional[Sequence[str]] = None, tamper: bool = False
) -> List[CheckResult]:
    selected = list(groups) if groups else list(CHECK_GROUPS)
    results: List[CheckResult] = []
    for g in selected:
        if g not in CHECK_GROUPS:
            raise KeyError(f"unknown check group {g!r}")
        results.extend(CHECK_GROUPS[g]())
    if tamper:
        results.append(_tampered_check())
    return results
