"""Built-in exact scenarios: global Backlund pairs frozen at the defect.

Each scenario supplies N+1 region fields (left to right), the defect specs,
and closed-form continuous-branch evaluators for the ring radical Omega and
its x-derivative per defect, so no square-root branch tracking is needed on
the exact pairs.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..defects import (
    DefectSpec,
    defect_condition_residual_t,
    defect_condition_residual_x,
    defect_condition_residual_a1a4,
    side_bindings,
    side_t_values,
)
from ..models import ModelSpec, get_model
from .fields import (
    KdVSoliton,
    LiouvilleSolution,
    MKdVSoliton,
    NLSBrightSoliton,
    SGKink,
    SGTwoKink,
    SideField,
    Vacuum,
)

OmegaFn = Callable[[float, float], complex]


@dataclass
class Scenario:
    name: str
    model_name: str
    regions: Tuple[SideField, ...]
    defects: Tuple[DefectSpec, ...]
    omega_fns: Tuple[OmegaFn, ...]
    omega_x_fns: Tuple[OmegaFn, ...]
    x_min: float
    x_max: float
    t_final: float = 5.0
    bt_sign: int = 1
    description: str = ""
    params: Dict[str, float] = dc_field(default_factory=dict)

    @property
    def model(self) -> ModelSpec:
        return get_model(self.model_name)

    def pair(self, k: int) -> Tuple[SideField, SideField]:
        """(left field, right field) flanking defect k."""
        return self.regions[k], self.regions[k + 1]

    def region_at(self, x: float) -> SideField:
        for k, d in enumerate(self.defects):
            if x < d.x0:
                return self.regions[k]
        return self.regions[-1]

    def pair_bindings(self, k: int, x: float, t: float, order: int = 1):
        left, right = self.pair(k)
        return side_bindings(
            self.model, left.u_derivs(x, t, order), right.u_derivs(x, t, order)
        )

    def lightcone_point(self, k: int, x: float, t: float) -> Dict[str, complex]:
        left, right = self.pair(k)
        return {
            "v": right.v_value(x, t),
            "vt": left.v_value(x, t),
            "v_t": right.v_t(x, t),
            "vt_t": left.v_t(x, t),
        }


def _sg_omega(alpha: float, left: SideField, right: SideField) -> OmegaFn:
    """Omega_ring = i*alpha*cos((v_left + v_right)/2) (continuous branch)."""

    def fn(x: float, t: float) -> complex:
        s = 0.5 * (left.v_value(x, t) + right.v_value(x, t))
        return 1j * alpha * cmath.cos(s)

    return fn


def _sg_omega_x(alpha: float, left: SideField, right: SideField) -> OmegaFn:
    def fn(x: float, t: float) -> complex:
        s = 0.5 * (left.v_value(x, t) + right.v_value(x, t))
        # s_x = (v~_x + v_x)/2 = -(u~ + u)
        sx = -(left.u_value(x, t) + right.u_value(x, t))
        return -1j * alpha * cmath.sin(s) * sx

    return fn


def _tanh_omega(prefactor: float, width: float, speed: float, center: float) -> OmegaFn:
    def fn(x: float, t: float) -> complex:
        return -1j * prefactor * math.tanh(width * (x - speed * t - center))

    return fn


def _tanh_omega_x(prefactor: float, width: float, speed: float, center: float) -> OmegaFn:
    def fn(x: float, t: float) -> complex:
        return (
            -1j * prefactor * width
            / math.cosh(width * (x - speed * t - center)) ** 2
        )

    return fn


def sg_kink_scenario(alpha: float = 1.0, x0: float = 0.0, kink_center: float = 2.0) -> Scenario:
    kink = SGKink(a=alpha, x1=kink_center)
    vac = Vacuum(lightcone=True)
    d = DefectSpec(defect_class="II", x0=x0, beta_or_alpha=alpha, epsilon=-1)
    return Scenario(
        name="sg-kink",
        model_name="sg",
        regions=(kink, vac),
        defects=(d,),
        omega_fns=(_sg_omega(alpha, kink, vac),),
        omega_x_fns=(_sg_omega_x(alpha, kink, vac),),
        x_min=-40.0,
        x_max=40.0,
        description="light-cone kink / vacuum pair, Backlund parameter = alpha",
        params={"alpha": alpha},
    )


def nls_soliton_scenario(
    beta: float = 1.0, alpha_plus: float = 0.3, x0: float = 0.0,
    soliton_center: float = -4.0,
) -> Scenario:
    sol = NLSBrightSoliton(a=beta, b=alpha_plus, x0=soliton_center)
    vac = Vacuum()
    d = DefectSpec(
        defect_class="I", x0=x0, alpha_plus=alpha_plus, beta_or_alpha=beta,
        epsilon=-1,
    )
    return Scenario(
        name="nls-soliton",
        model_name="nls-focusing",
        regions=(sol, vac),
        defects=(d,),
        omega_fns=(_tanh_omega(beta, beta, 2 * alpha_plus, soliton_center),),
        omega_x_fns=(_tanh_omega_x(beta, beta, 2 * alpha_plus, soliton_center),),
        x_min=-40.0,
        x_max=40.0,
        description="bright soliton / vacuum pair; amplitude = beta, carrier = alpha_plus",
        params={"beta": beta, "alpha_plus": alpha_plus},
    )


def mkdv_soliton_scenario(k: float = 1.0, x0: float = 0.0, center: float = -6.0) -> Scenario:
    sol = MKdVSoliton(k=k, x0=center)
    vac = Vacuum()
    d = DefectSpec(defect_class="II", x0=x0, beta_or_alpha=k, epsilon=-1)
    return Scenario(
        name="mkdv-soliton",
        model_name="mkdv-minus",
        regions=(sol, vac),
        defects=(d,),
        omega_fns=(_tanh_omega(k, k, k**2, center),),
        omega_x_fns=(_tanh_omega_x(k, k, k**2, center),),
        x_min=-40.0,
        x_max=40.0,
        description="mKdV soliton / vacuum pair, alpha = k",
        params={"k": k},
    )


def kdv_soliton_scenario(k: float = 0.7, x0: float = 0.0, center: float = -15.0) -> Scenario:
    eps = 1
    sol = KdVSoliton(k=k, x0=center, epsilon=eps)
    vac = Vacuum()
    d = DefectSpec(defect_class="III", x0=x0, beta_or_alpha=2 * k, epsilon=eps)
    return Scenario(
        name="kdv-soliton",
        model_name="kdv-plus",
        regions=(sol, vac),
        defects=(d,),
        omega_fns=(_tanh_omega(2 * k, k, 4 * k**2, center),),
        omega_x_fns=(_tanh_omega_x(2 * k, k, 4 * k**2, center),),
        x_min=-40.0,
        x_max=40.0,
        description="KdV soliton / vacuum pair, beta = 2k",
        params={"k": k, "beta": 2 * k},
    )


def liouville_scenario(
    shift: float = 0.5, s0: float = 1.0, x0: float = 0.0
) -> Scenario:
    left = LiouvilleSolution(shift=shift, s0=s0)
    right = LiouvilleSolution(shift=0.0, s0=s0)
    gamma = 2.0 * shift / s0
    d = DefectSpec(
        defect_class="II", x0=x0, beta_or_alpha=gamma, epsilon=1, liouville=True
    )

    def omega_fn(x: float, t: float) -> complex:
        return 1j * (left.u_value(x, t) - right.u_value(x, t))

    def omega_x_fn(x: float, t: float) -> complex:
        lu = left.u_derivs(x, t, 1)
        ru = right.u_derivs(x, t, 1)
        return 1j * (lu[1] - ru[1])

    return Scenario(
        name="liouville-pair",
        model_name="liouville",
        regions=(left, right),
        defects=(d,),
        omega_fns=(omega_fn,),
        omega_x_fns=(omega_x_fn,),
        x_min=-8.0,
        x_max=8.0,
        description="Liouville general-solution pair, gamma = 2*shift/s0",
        params={"gamma": gamma, "shift": shift, "s0": s0},
    )


def sg_two_defect_scenario(
    a: float = 1.2, b: float = 0.8, x1: float = -1.0, x2: float = 1.0,
    kink_center: float = 3.0, kink2_center: float = -3.0,
) -> Scenario:
    vac = Vacuum(lightcone=True)
    kink = SGKink(a=a, x1=kink_center)
    two = SGTwoKink(a1=a, a2=b, x1=kink_center, x2=kink2_center)
    d1 = DefectSpec(defect_class="II", x0=x1, beta_or_alpha=b, epsilon=-1)
    d2 = DefectSpec(defect_class="II", x0=x2, beta_or_alpha=a, epsilon=-1)
    return Scenario(
        name="sg-two-defect",
        model_name="sg",
        regions=(two, kink, vac),
        defects=(d1, d2),
        omega_fns=(
            _sg_omega(b, two, kink),
            _sg_omega(a, kink, vac),
        ),
        omega_x_fns=(
            _sg_omega_x(b, two, kink),
            _sg_omega_x(a, kink, vac),
        ),
        x_min=-40.0,
        x_max=40.0,
        description="chained defects: two-kink | kink | vacuum",
        params={"a": a, "b": b},
    )


SCENARIO_BUILDERS: Dict[str, Callable[..., Scenario]] = {
    "sg-kink": sg_kink_scenario,
    "nls-soliton": nls_soliton_scenario,
    "mkdv-soliton": mkdv_soliton_scenario,
    "kdv-soliton": kdv_soliton_scenario,
    "liouville-pair": liouville_scenario,
    "sg-two-defect": sg_two_defect_scenario,
}


def builtin_scenarios() -> List[Scenario]:
    return [build() for build in SCENARIO_BUILDERS.values()]


def get_scenario(name: str, **overrides) -> Scenario:
    try:
        return SCENARIO_BUILDERS[name](**overrides)
    except KeyError:
        raise KeyError(
            f"unknown scenario {name!r}; known: {', '.join(SCENARIO_BUILDERS)}"
        ) from None


# -- admission checks -----------------------------------------------------------


def pde_residual(m: ModelSpec, f: SideField, x: float, t: float) -> complex:
    """Pointwise residual of the model equation on one closed-form field."""
    if m.lightcone:
        ut = f.u_t(x, t)
        v = f.v_value(x, t)
        if m.name == "sg":
            return -2.0 * ut - cmath.sin(v)
        return 2.0 * ut - 2.0 * cmath.exp(v)
    d = f.u_derivs(x, t, 3)
    ut = f.u_t(x, t)
    if m.reduction_class == "I":
        cubic = 2.0 * m.epsilon * abs(d[0]) ** 2 * d[0]
        if m.scheme == "KN":
            # i u_t + u_xx = i eps (|u|^2 u)_x
            dd = f.u_derivs(x, t, 1)
            mod2 = abs(d[0]) ** 2
            grad = (
                2.0 * (d[0] * d[1].conjugate()).real * d[0] + mod2 * d[1]
            )
            return 1j * ut + d[2] - 1j * m.epsilon * grad
        return 1j * ut + d[2] - cubic
    if m.reduction_class == "II":
        return ut - 6.0 * m.epsilon * d[0] ** 2 * d[1] + d[3]
    return ut - 6.0 * m.epsilon * d[0] * d[1] + d[3]


def check_scenario(
    s: Scenario, n_points: int = 20, seed: int = 7, t_span: Optional[float] = None
) -> Dict[str, float]:
    """Max PDE and Backlund residuals over random sample points."""
    rng = random.Random(seed)
    m = s.model
    t_max = t_span if t_span is not None else s.t_final
    span = min(20.0, s.x_max - s.x_min)
    out: Dict[str, float] = {}
    pde_max = 0.0
    for region in s.regions:
        for _ in range(n_points):
            x = rng.uniform(-span / 2, span / 2)
            t = rng.uniform(0.0, t_max)
            pde_max = max(pde_max, abs(pde_residual(m, region, x, t)))
    out["pde"] = pde_max
    bx = bt = red = 0.0
    for k in range(len(s.defects)):
        d = s.defects[k]
        left, right = s.pair(k)
        for _ in range(n_points):
            x = rng.uniform(-span / 2, span / 2)
            t = rng.uniform(0.0, t_max)
            bind = s.pair_bindings(k, x, t, order=2)
            om = s.omega_fns[k](x, t)
            omx = s.omega_x_fns[k](x, t)
            r2, r3 = defect_condition_residual_x(m, d, bind, om)
            bx = max(bx, abs(r2), abs(r3))
            r1, r4 = defect_condition_residual_a1a4(m, d, bind, om, omx)
            red = max(red, abs(r1), abs(r4))
            tv = side_t_values(m, left.u_t(x, t), right.u_t(x, t))
            lc = s.lightcone_point(k, x, t) if m.lightcone else None
            rt1, rt2 = defect_condition_residual_t(
                m, d, bind, tv, om, lightcone_point=lc, bt_sign=s.bt_sign
            )
            bt = max(bt, abs(rt1), abs(rt2))
    out["bt_x"] = bx
    out["bt_t"] = bt
    out["bt_a1a4"] = red
    return out
