"""FastAPI surface over the charge engine.

The CLI talks to this app in-process through an ASGI transport; it can also
be served standalone (`defectcharges serve`).
"""

from __future__ import annotations

import math
from typing import Dict, List

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..algebra.textform import to_json_dict, to_text
from ..charges.conservation import bulk_density, flux, gammas_for
from ..charges.expansion import defect_coefficients, symmetrize
from ..defects import DefectSpec
from ..errors import ConfigError, DefectChargesError, QuadratureUnderflowError
from ..harness.reports import (
    charge_plot_script,
    charge_report_to_csv,
    charge_report_to_json,
    format_float,
    monodromy_to_csv,
)
from ..harness.runner import compute_charges, kappa_for
from ..harness.transition import dressed_transition, evolution_residual
from ..models import get_model, model_info, registry
from ..scenarios.builtin import SCENARIO_BUILDERS, get_scenario
from ..verification import run_checks
from . import schemas as S

app = FastAPI(title="defectcharges", version=__version__)


@app.get("/healthz")
def healthz() -> Dict[str, str]:
    return {"status": "ok", "version": __version__}


@app.get("/models", response_model=List[S.ModelInfo])
def list_models():
    return [S.ModelInfo(**model_info(m)) for m in registry().values()]


@app.get("/models/{name}", response_model=S.ModelInfo)
def model_detail(name: str):
    try:
        m = get_model(name)
    except KeyError as exc:
        raise HTTPException(status_code=404, detail=str(exc)) from exc
    return S.ModelInfo(**model_info(m))


@app.get("/scenarios", response_model=List[S.ScenarioInfo])
def list_scenarios():
    out = []
    for name in SCENARIO_BUILDERS:
        s = get_scenario(name)
        out.append(
            S.ScenarioInfo(
                name=s.name,
                model=s.model_name,
                description=s.description,
                n_defects=len(s.defects),
                params=s.params,
                x_min=s.x_min,
                x_max=s.x_max,
            )
        )
    return out


def _default_defect(model_name: str) -> DefectSpec:
    m = get_model(model_name)
    if m.reduction_class == "I":
        return DefectSpec(
            defect_class="I", x0=0.0, alpha_plus=0.5, beta_or_alpha=1.0,
            epsilon=m.epsilon,
        )
    if m.reduction_class == "III":
        return DefectSpec(
            defect_class="III", x0=0.0, beta_or_alpha=1.0, epsilon=m.epsilon
        )
    return DefectSpec(
        defect_class="II", x0=0.0, beta_or_alpha=1.0, epsilon=m.epsilon,
        liouville=m.name == "liouville",
    )


@app.post("/expand", response_model=S.ExpandResponse)
def expand(req: S.ExpandRequest):
    try:
        m = get_model(req.model)
    except KeyError as exc:
        raise HTTPException(status_code=404, detail=str(exc)) from exc
    if req.orders < 0:
        raise HTTPException(status_code=422, detail="orders must be >= 0")
    if req.defect is not None:
        d = DefectSpec(
            defect_class=req.defect.defect_class,
            x0=req.defect.x0,
            alpha_plus=req.defect.alpha_plus,
            beta_or_alpha=req.defect.beta,
            sign_branch=req.defect.sign,
            epsilon=req.defect.epsilon,
            liouville=req.defect.liouville,
        )
    else:
        d = _default_defect(req.model)
    orders: List[S.ExpansionOrder] = []
    if req.orders >= 1:
        gammas = gammas_for(m, req.orders)
        dcoeffs = defect_coefficients(m, d, req.orders)
        start = 0 if m.scheme == "KN" else 1
        for n in range(start, req.orders + 1):
            if m.scheme == "AKNS":
                gam = gammas[n - 1]
            else:
                gam = gammas[n]
            rho = bulk_density(m, n, gammas)
            if m.reduction_class == "I" and m.scheme == "AKNS":
                rho_rep = symmetrize(rho, n, m.epsilon).scale(kappa_for(m, n))
            else:
                rho_rep = rho
            entry = S.ExpansionOrder(
                order=n,
                gamma_text=to_text(gam),
                gamma_json=to_json_dict(gam),
                density_text=to_text(rho_rep),
                density_json=to_json_dict(rho_rep),
            )
            if not m.lightcone:
                fl = flux(m, n)
                entry.flux_text = to_text(fl)
                entry.flux_json = to_json_dict(fl)
            if m.scheme == "AKNS" and n in dcoeffs:
                dt_ = dcoeffs[n]
                if m.reduction_class == "I":
                    dt_ = symmetrize(dt_, n, m.epsilon).scale(kappa_for(m, n))
                entry.defect_text = to_text(dt_)
                entry.defect_json = to_json_dict(dt_)
            orders.append(entry)
    return S.ExpandResponse(model=req.model, orders=orders)


@app.post("/verify", response_model=S.VerifyResponse)
def verify(req: S.VerifyRequest):
    try:
        results = run_checks(req.checks or None, tamper=req.tamper)
    except KeyError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    models_out = [
        S.CheckResultModel(
            name=r.name, passed=r.passed, detail=r.detail, value=r.value
        )
        for r in results
    ]
    return S.VerifyResponse(
        passed=all(r.passed for r in results),
        n_checks=len(results),
        results=models_out,
    )


@app.post("/simulate", response_model=S.SimulateResponse)
def simulate(req: S.SimulateRequest):
    try:
        scenario = get_scenario(req.scenario, **req.scenario_params)
    except (KeyError, TypeError) as exc:
        raise HTTPException(status_code=404, detail=str(exc)) from exc
    steps = max(1, req.steps)
    if steps == 1:
        times = [req.t0]
    else:
        dt = (req.t1 - req.t0) / (steps - 1)
        times = [req.t0 + k * dt for k in range(steps)]
    try:
        report = compute_charges(
            scenario,
            orders=list(range(1, req.orders + 1)),
            h=req.h,
            times=times,
        )
    except QuadratureUnderflowError as exc:
        raise HTTPException(status_code=409, detail=str(exc)) from exc
    except ConfigError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    resp = S.SimulateResponse(
        model=report.model,
        scenario=report.scenario,
        drift={str(n): v for n, v in report.drifts().items()},
    )
    if "csv" in req.formats:
        resp.csv = charge_report_to_csv(report)
    if "json" in req.formats:
        resp.json_report = charge_report_to_json(report)
    if "plot-script" in req.formats:
        resp.plot_script = charge_plot_script("charges.csv")
    return resp


@app.post("/monodromy", response_model=S.MonodromyResponse)
def monodromy(req: S.MonodromyRequest):
    try:
        scenario = get_scenario(req.scenario, **req.scenario_params)
    except (KeyError, TypeError) as exc:
        raise HTTPException(status_code=404, detail=str(exc)) from exc
    if len(scenario.defects) != 1:
        raise HTTPException(
            status_code=422, detail="monodromy runs on single-defect scenarios"
        )
    x, y = req.window
    points: List[S.MonodromyPoint] = []
    rows = []
    exponents: Dict[str, List[float]] = {}
    for lre, lim in req.lambdas:
        lam = complex(lre, lim)
        res_levels = []
        det_err = 0.0
        for dt_level in req.dt_levels:
            r = evolution_residual(scenario, lam, req.t, x, y, dt_level, h=req.h)
            dr = dressed_transition(scenario, lam, req.t, x, y, h=req.h)
            det_err = dr.det_identity_error
            res_levels.append(r)
            points.append(
                S.MonodromyPoint(
                    lambda_re=lre,
                    lambda_im=lim,
                    dt=dt_level,
                    residual=r,
                    det_identity_error=det_err,
                )
            )
            rows.append(
                {
                    "model": scenario.model_name,
                    "scenario": scenario.name,
                    "lambda_re": lre,
                    "lambda_im": lim,
                    "t": req.t,
                    "dt": dt_level,
                    "residual": r,
                    "det_identity_error": det_err,
                }
            )
        exps = [
            math.log2(res_levels[i] / res_levels[i + 1])
            for i in range(len(res_levels) - 1)
            if res_levels[i + 1] > 0
        ]
        exponents[f"{lre:+g}{lim:+g}j"] = exps
    return S.MonodromyResponse(
        model=scenario.model_name,
        scenario=scenario.name,
        points=points,
        scaling_exponents=exponents,
        csv=monodromy_to_csv(rows),
    )
