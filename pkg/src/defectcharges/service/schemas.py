"""Pydantic request/response models for the service API."""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field


class ModelInfo(BaseModel):
    name: str
    scheme: str
    reduction_class: str
    epsilon: int
    lightcone: bool
    v_polarity: str
    equation: str
    eom: Dict[str, str] = Field(default_factory=dict)
    dispersion: Dict[str, str] = Field(default_factory=dict)
    potential_substitution: Optional[str] = None
    V: Optional[Dict[str, Dict[str, str]]] = None


class ScenarioInfo(BaseModel):
    name: str
    model: str
    description: str
    n_defects: int
    params: Dict[str, float]
    x_min: float
    x_max: float


class DefectConfig(BaseModel):
    defect_class: str = Field(alias="class")
    x0: float = 0.0
    alpha_plus: float = 0.0
    beta: float = 1.0
    sign: int = 1
    epsilon: int = -1
    liouville: bool = False

    model_config = {"populate_by_name": True}


class ExpandRequest(BaseModel):
    model: str
    orders: int = 3
    defect: Optional[DefectConfig] = None


class ExpansionOrder(BaseModel):
    order: int
    gamma_text: str
    gamma_json: dict
    density_text: str
    density_json: dict
    flux_text: Optional[str] = None
    flux_json: Optional[dict] = None
    defect_text: Optional[str] = None
    defect_json: Optional[dict] = None


class ExpandResponse(BaseModel):
    model: str
    orders: List[ExpansionOrder]


class VerifyRequest(BaseModel):
    checks: List[str] = Field(default_factory=list)  # empty = all groups
    tamper: bool = False


class CheckResultModel(BaseModel):
    name: str
    passed: bool
    detail: str = ""
    value: Optional[float] = None


class VerifyResponse(BaseModel):
    passed: bool
    n_checks: int
    results: List[CheckResultModel]


class SimulateRequest(BaseModel):
    scenario: str
    scenario_params: Dict[str, float] = Field(default_factory=dict)
    orders: int = 3
    h: float = 0.01
    t0: float = 0.0
    t1: float = 5.0
    steps: int = 11
    formats: List[str] = Field(default_factory=lambda: ["csv", "json"])


class SimulateResponse(BaseModel):
    model: str
    scenario: str
    drift: Dict[str, float]
    csv: Optional[str] = None
    json_report: Optional[str] = None
    plot_script: Optional[str] = None


class MonodromyRequest(BaseModel):
    scenario: str
    scenario_params: Dict[str, float] = Field(default_factory=dict)
    lambdas: List[Tuple[float, float]] = Field(
        default_factory=lambda: [(0.7, 0.0), (1.3, 0.0)]
    )
    t: float = 1.0
    window: Tuple[float, float] = (-3.0, 3.0)
    dt_levels: List[float] = Field(default_factory=lambda: [0.08, 0.04, 0.02])
    h: float = 0.004


class MonodromyPoint(BaseModel):
    lambda_re: float
    lambda_im: float
    dt: float
    residual: float
    det_identity_error: float


class MonodromyResponse(BaseModel):
    model: str
    scenario: str
    points: List[MonodromyPoint]
    scaling_exponents: Dict[str, List[float]]
    csv: str
