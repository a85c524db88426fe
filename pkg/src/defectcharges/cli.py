"""Command-line client for the charge service.

Every subcommand drives the FastAPI app; by default through an in-process
ASGI transport (no server needed), or against a remote instance with
--server.  Exit codes: 0 success, 1 failed verification check, 2 bad
configuration, 3 symbolic failure, 4 quadrature underflow.
"""

from __future__ import annotations

import json
import pathlib
import sys
from typing import Optional

import click
import httpx

from .config import RunConfig, parse_config, serialize_config
from .errors import ConfigError

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2
EXIT_SYMBOLIC = 3
EXIT_QUADRATURE = 4


def _client(server: Optional[str]) -> httpx.Client:
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    # in-process: drive the ASGI app directly, no server required
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service.app import app

    return TestClient(app)


def _load_config(path: Optional[str]) -> RunConfig:
    if path is None:
        return RunConfig()
    try:
        return parse_config(pathlib.Path(path).read_text(encoding="utf-8"))
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    except OSError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)


def _ensure_outdir(cfg: RunConfig) -> pathlib.Path:
    out = pathlib.Path(cfg.output_directory)
    out.mkdir(parents=True, exist_ok=True)
    return out


@click.group()
def main() -> None:
    """Modified conserved charges for integrable field theories with defects."""


@main.command("list-models")
@click.option("--server", default=None, help="remote service URL")
def list_models(server: Optional[str]) -> None:
    with _client(server) as c:
        r = c.get("/models")
        r.raise_for_status()
        for m in r.json():
            click.echo(
                f"{m['name']:15s} scheme={m['scheme']:4s} "
                f"class={m['reduction_class']:4s} eps={m['epsilon']:+d}  "
                f"{m['equation']}"
            )


@main.command("list-scenarios")
@click.option("--server", default=None, help="remote service URL")
def list_scenarios(server: Optional[str]) -> None:
    with _client(server) as c:
        r = c.get("/scenarios")
        r.raise_for_status()
        for s in r.json():
            click.echo(
                f"{s['name']:15s} model={s['model']:12s} "
                f"defects={s['n_defects']}  {s['description']}"
            )


@main.command()
@click.option("--config", "config_path", default=None, type=click.Path())
@click.option("--model", default=None)
@click.option("--orders", default=None, type=int)
@click.option("--server", default=None)
def expand(config_path, model, orders, server) -> None:
    """Dump Gamma_n, densities, fluxes and defect terms (text + JSON)."""
    cfg = _load_config(config_path)
    if model:
        cfg.model = model
    if orders is not None:
        cfg.orders = orders
    if not cfg.model:
        click.echo("config error: no model given", err=True)
        sys.exit(EXIT_CONFIG)
    payload = {"model": cfg.model, "orders": cfg.orders}
    if cfg.defect:
        payload["defect"] = {
            "class": cfg.defect.get("class", "II"),
            "x0": float(cfg.defect.get("x0", 0.0)),
            "alpha_plus": float(cfg.defect.get("alpha_plus", 0.0)),
            "beta": float(cfg.defect.get("beta", 1.0)),
            "sign": int(cfg.defect.get("sign", 1)),
            "epsilon": int(cfg.defect.get("epsilon", -1)),
            "liouville": cfg.defect.get("liouville", "false").lower()
            in ("1", "true", "yes"),
        }
    with _client(server) as c:
        r = c.post("/expand", json=payload)
        if r.status_code == 404:
            click.echo(f"config error: {r.json()['detail']}", err=True)
            sys.exit(EXIT_CONFIG)
        if r.status_code >= 400:
            click.echo(f"symbolic failure: {r.text}", err=True)
            sys.exit(EXIT_SYMBOLIC)
        data = r.json()
    out = _ensure_outdir(cfg)
    text_lines = []
    for o in data["orders"]:
        text_lines.append(f"# order {o['order']}")
        text_lines.append(f"gamma   : {o['gamma_text']}")
        text_lines.append(f"density : {o['density_text']}")
        if o.get("flux_text") is not None:
            text_lines.append(f"flux    : {o['flux_text']}")
        if o.get("defect_text") is not None:
            text_lines.append(f"defect  : {o['defect_text']}")
        text_lines.append("")
    (out / f"expand-{cfg.model}.txt").write_text(
        "\n".join(text_lines), encoding="utf-8"
    )
    (out / f"expand-{cfg.model}.json").write_text(
        json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    click.echo(f"wrote expand-{cfg.model}.txt / .json to {out}")


@main.command()
@click.option("--config", "config_path", default=None, type=click.Path())
@click.option("--checks", default=None, help="comma-separated check groups")
@click.option("--tamper", is_flag=True, default=False,
              help="also run the deliberately tampered model (must fail)")
@click.option("--server", default=None)
def verify(config_path, checks, tamper, server) -> None:
    """Run the verification suite; exit 0 iff every check passes."""
    cfg = _load_config(config_path)
    groups = list(cfg.verify_checks)
    if checks is not None:
        groups = [c.strip() for c in checks.split(",") if c.strip()]
        if not groups:
            click.echo("warning: empty check list, nothing verified", err=True)
            sys.exit(EXIT_OK)
    payload = {"checks": groups, "tamper": tamper or cfg.verify_tamper}
    with _client(server) as c:
        r = c.post("/verify", json=payload)
        if r.status_code == 422:
            click.echo(f"config error: {r.json()['detail']}", err=True)
            sys.exit(EXIT_CONFIG)
        r.raise_for_status()
        data = r.json()
    for res in data["results"]:
        mark = "PASS" if res["passed"] else "FAIL"
        click.echo(f"{mark} {res['name']}: {res['detail']}")
    click.echo(
        f"{sum(r['passed'] for r in data['results'])}/{data['n_checks']} checks passed"
    )
    sys.exit(EXIT_OK if data["passed"] else EXIT_CHECK_FAILED)


@main.command()
@click.option("--config", "config_path", default=None, type=click.Path())
@click.option("--scenario", default=None)
@click.option("--orders", default=None, type=int)
@click.option("--server", default=None)
def simulate(config_path, scenario, orders, server) -> None:
    """Compute the charge report for a scenario; write CSV/JSON/plot script."""
    cfg = _load_config(config_path)
    if scenario:
        cfg.scenario = scenario
    if orders is not None:
        cfg.orders = orders
    if not cfg.scenario:
        click.echo("config error: no scenario given", err=True)
        sys.exit(EXIT_CONFIG)
    payload = {
        "scenario": cfg.scenario,
        "scenario_params": cfg.scenario_params,
        "orders": cfg.orders,
        "h": cfg.grid_h,
        "t0": cfg.times_t0,
        "t1": cfg.times_t1,
        "steps": cfg.times_steps,
        "formats": list(cfg.output_formats),
    }
    with _client(server) as c:
        r = c.post("/simulate", json=payload)
        if r.status_code == 404:
            click.echo(f"config error: {r.json()['detail']}", err=True)
            sys.exit(EXIT_CONFIG)
        if r.status_code == 409:
            click.echo(
                "quadrature underflow: " + r.json()["detail"]
                + " (enlarge the domain or relax the tail tolerance)",
                err=True,
            )
            sys.exit(EXIT_QUADRATURE)
        if r.status_code >= 400:
            click.echo(f"error: {r.text}", err=True)
            sys.exit(EXIT_CONFIG)
        data = r.json()
    out = _ensure_outdir(cfg)
    base = f"charges-{cfg.scenario}"
    if data.get("csv"):
        (out / f"{base}.csv").write_text(data["csv"], encoding="utf-8")
    if data.get("json_report"):
        (out / f"{base}.json").write_text(data["json_report"], encoding="utf-8")
    if data.get("plot_script"):
        (out / f"{base}_plot.py").write_text(data["plot_script"], encoding="utf-8")
    for n, v in sorted(data["drift"].items()):
        click.echo(f"order {n}: drift = {v:.3e}")
    click.echo(f"wrote {base}.* to {out}")


@main.command()
@click.option("--config", "config_path", default=None, type=click.Path())
@click.option("--scenario", default="sg-kink")
@click.option("--server", default=None)
def monodromy(config_path, scenario, server) -> None:
    """Defect-dressed transition matrix: evolution residual vs dt."""
    cfg = _load_config(config_path)
    if cfg.scenario is None:
        cfg.scenario = scenario
    payload = {
        "scenario": cfg.scenario,
        "scenario_params": cfg.scenario_params,
        "lambdas": [[z.real, z.imag] for z in cfg.lambda_samples],
        "t": 1.0,
        "window": list(cfg.monodromy_window),
        "dt_levels": [cfg.monodromy_dt, cfg.monodromy_dt / 2, cfg.monodromy_dt / 4],
        "h": cfg.monodromy_h,
    }
    with _client(server) as c:
        r = c.post("/monodromy", json=payload)
        if r.status_code in (404, 422):
            click.echo(f"config error: {r.json()['detail']}", err=True)
            sys.exit(EXIT_CONFIG)
        r.raise_for_status()
        data = r.json()
    out = _ensure_outdir(cfg)
    (out / f"monodromy-{cfg.scenario}.csv").write_text(data["csv"], encoding="utf-8")
    for lam, exps in data["scaling_exponents"].items():
        click.echo(f"lambda {lam}: dt-scaling exponents {[f'{e:.2f}' for e in exps]}")
    click.echo(f"wrote monodromy-{cfg.scenario}.csv to {out}")


@main.command("show-config")
@click.option("--config", "config_path", default=None, type=click.Path())
def show_config(config_path) -> None:
    """Parse and re-serialize a configuration (canonical form)."""
    cfg = _load_config(config_path)
    click.echo(serialize_config(cfg), nl=False)


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", default=8700, type=int)
def serve(host: str, port: int) -> None:
    """Run the FastAPI service."""
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
