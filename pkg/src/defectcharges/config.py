"""Flat key=value run-configuration files.

Example::

    scenario = sg-kink
    scenario.alpha = 1.0
    orders = 3
    grid.x_min = -40
    grid.x_max = 40
    grid.h = 0.01
    times.t0 = 0
    times.t1 = 5
    times.steps = 11
    lambda_samples = 0.7, 1.3
    output.directory = out
    output.formats = csv, json, plot-script

Unknown keys are rejected; serialize(parse(text)) is idempotent.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .errors import ConfigError

_KNOWN_SCALARS = {
    "model",
    "scenario",
    "orders",
    "grid.x_min",
    "grid.x_max",
    "grid.h",
    "times.t0",
    "times.t1",
    "times.steps",
    "lambda_samples",
    "monodromy.window",
    "monodromy.dt",
    "monodromy.h",
    "output.directory",
    "output.formats",
    "defect.class",
    "defect.alpha_plus",
    "defect.beta",
    "defect.sign",
    "defect.epsilon",
    "defect.x0",
    "defect.liouville",
    "verify.checks",
    "verify.tamper",
}
_SCENARIO_PREFIX = "scenario."
_FORMATS = ("csv", "json", "plot-script")


@dataclass
class RunConfig:
    model: Optional[str] = None
    scenario: Optional[str] = None
    scenario_params: Dict[str, float] = field(default_factory=dict)
    orders: int = 3
    grid_x_min: float = -40.0
    grid_x_max: float = 40.0
    grid_h: float = 0.01
    times_t0: float = 0.0
    times_t1: float = 5.0
    times_steps: int = 11
    lambda_samples: Tuple[complex, ...] = (0.7 + 0j, 1.3 + 0j)
    monodromy_window: Tuple[float, float] = (-3.0, 3.0)
    monodromy_dt: float = 0.04
    monodromy_h: float = 0.004
    output_directory: str = "out"
    output_formats: Tuple[str, ...] = ("csv", "json")
    defect: Dict[str, str] = field(default_factory=dict)
    verify_checks: Tuple[str, ...] = ()
    verify_tamper: bool = False

    def times(self) -> List[float]:
        if self.times_steps <= 1:
            return [self.times_t0]
        dt = (self.times_t1 - self.times_t0) / (self.times_steps - 1)
        return [self.times_t0 + k * dt for k in range(self.times_steps)]


def _parse_complex(text: str) -> complex:
    return complex(text.replace(" ", "").replace("i", "j"))


def parse_config(text: str) -> RunConfig:
    cfg = RunConfig()
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key in seen:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        seen.add(key)
        if key.startswith(_SCENARIO_PREFIX) and key != "scenario":
            try:
                cfg.scenario_params[key[len(_SCENARIO_PREFIX):]] = float(value)
            except ValueError:
                raise ConfigError(f"line {lineno}: bad number {value!r}") from None
            continue
        if key not in _KNOWN_SCALARS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        try:
            if key == "model":
                cfg.model = value
            elif key == "scenario":
                cfg.scenario = value
            elif key == "orders":
                cfg.orders = int(value)
            elif key == "grid.x_min":
                cfg.grid_x_min = float(value)
            elif key == "grid.x_max":
                cfg.grid_x_max = float(value)
            elif key == "grid.h":
                cfg.grid_h = float(value)
            elif key == "times.t0":
                cfg.times_t0 = float(value)
            elif key == "times.t1":
                cfg.times_t1 = float(value)
            elif key == "times.steps":
                cfg.times_steps = int(value)
            elif key == "lambda_samples":
                cfg.lambda_samples = tuple(
                    _parse_complex(v) for v in value.split(",") if v.strip()
                )
            elif key == "monodromy.window":
                a, b = (float(v) for v in value.split(","))
                cfg.monodromy_window = (a, b)
            elif key == "monodromy.dt":
                cfg.monodromy_dt = float(value)
            elif key == "monodromy.h":
                cfg.monodromy_h = float(value)
            elif key == "output.directory":
                cfg.output_directory = value
            elif key == "output.formats":
                fmts = tuple(v.strip() for v in value.split(",") if v.strip())
                for f in fmts:
                    if f not in _FORMATS:
                        raise ConfigError(f"unknown output format {f!r}")
                cfg.output_formats = fmts
            elif key.startswith("defect."):
                cfg.defect[key.split(".", 1)[1]] = value
            elif key == "verify.checks":
                cfg.verify_checks = tuple(
                    v.strip() for v in value.split(",") if v.strip()
                )
            elif key == "verify.tamper":
                cfg.verify_tamper = value.lower() in ("1", "true", "yes")
        except ConfigError:
            raise
        except ValueError:
            raise ConfigError(f"line {lineno}: bad value {value!r} for {key}") from None
    return cfg


def _fmt_float(x: float) -> str:
    return repr(float(x))


def serialize_config(cfg: RunConfig) -> str:
    lines = []
    if cfg.model is not None:
        lines.append(f"model = {cfg.model}")
    if cfg.scenario is not None:
        lines.append(f"scenario = {cfg.scenario}")
    for k in sorted(cfg.scenario_params):
        lines.append(f"scenario.{k} = {_fmt_float(cfg.scenario_params[k])}")
    lines.append(f"orders = {cfg.orders}")
    for k in sorted(cfg.defect):
        lines.append(f"defect.{k} = {cfg.defect[k]}")
    lines.append(f"grid.x_min = {_fmt_float(cfg.grid_x_min)}")
    lines.append(f"grid.x_max = {_fmt_float(cfg.grid_x_max)}")
    lines.append(f"grid.h = {_fmt_float(cfg.grid_h)}")
    lines.append(f"times.t0 = {_fmt_float(cfg.times_t0)}")
    lines.append(f"times.t1 = {_fmt_float(cfg.times_t1)}")
    lines.append(f"times.steps = {cfg.times_steps}")
    lam = ", ".join(
        f"{z.real:+g}{z.imag:+g}i".replace("+", "", 1) if z.imag else f"{z.real:g}"
        for z in cfg.lambda_samples
    )
    lines.append(f"lambda_samples = {lam}")
    lines.append(
        "monodromy.window = "
        f"{_fmt_float(cfg.monodromy_window[0])}, {_fmt_float(cfg.monodromy_window[1])}"
    )
    lines.append(f"monodromy.dt = {_fmt_float(cfg.monodromy_dt)}")
    lines.append(f"monodromy.h = {_fmt_float(cfg.monodromy_h)}")
    lines.append(f"output.directory = {cfg.output_directory}")
    lines.append(f"output.formats = {', '.join(cfg.output_formats)}")
    if cfg.verify_checks:
        lines.append(f"verify.checks = {', '.join(cfg.verify_checks)}")
    if cfg.verify_tamper:
        lines.append("verify.tamper = true")
    return "\n".join(lines) + "\n"
