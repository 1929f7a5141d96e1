"""HTTP API over the closed-form calculus and the simulation engine.

create_app builds a FastAPI application with JSON endpoints under /api, a
/healthz probe, and an optional static mount for a bundled UI. Handlers are
synchronous on purpose: the framework runs them on its thread pool, and a
counting semaphore sheds load with 429 once all simulation slots are busy.

Error shape is uniform: {"code", "message", "field_path"}. Malformed request
bodies come back 400; well-formed bodies that fail semantic checks (unknown
parameter path, too many grid values, an over-budget n_cases) come back 422
or 400 with a specific code.
"""

from __future__ import annotations

import os
import re
import threading
from typing import Literal

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict, Field

from . import __version__
from .core import (
    CounterfactualMatrix,
    Mode,
    UtilityModel,
    build_report,
    discovery_analysis,
    validate_matrix,
)
from .engine import (
    MAX_COMPARE_SCENARIOS,
    MAX_SWEEP_VALUES,
    calibrate_thresholds,
    compare_scenarios,
    run_scenario,
    sweep,
)
from .errors import CfxValidationError
from .io import SCHEMA_VERSION
from .presets import get_preset, preset_names
from .scenario import PARAMETER_GROUPS, Scenario, parameter_schema

MAX_EPISODE_SAMPLES = 1000

_SEED_MAX = 2**64 - 1


class EuRequest(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    matrix: CounterfactualMatrix
    utilities: UtilityModel = UtilityModel()
    mode: Mode = "reviewed"


class SimulateRequest(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    scenario: Scenario = Scenario()
    n_cases: int = Field(100_000, ge=1)
    seed: int = Field(0, ge=0, le=_SEED_MAX)
    sample_limit: int = Field(0, ge=0, le=MAX_EPISODE_SAMPLES)


class SweepRequest(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    scenario: Scenario = Scenario()
    param_path: str
    values: tuple[float, ...] = Field(min_length=1, max_length=MAX_SWEEP_VALUES)
    n_cases: int = Field(100_000, ge=1)
    seed: int = Field(0, ge=0, le=_SEED_MAX)
    seed_policy: Literal["shared", "per_value"] = "shared"


class CompareRequest(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    scenarios: tuple[Scenario, ...] = Field(min_length=1, max_length=MAX_COMPARE_SCENARIOS)
    names: tuple[str, ...] | None = None
    n_cases: int = Field(100_000, ge=1)
    seed: int = Field(0, ge=0, le=_SEED_MAX)


class CalibrateRequest(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    scenario: Scenario = Scenario()
    target_rate: float = Field(ge=0.0, le=1.0)
    n_cases: int = Field(100_000, ge=1)
    seed: int = Field(0, ge=0, le=_SEED_MAX)


def _error(status: int, code: str, message: str, field_path: str = "") -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"code": code, "message": message, "field_path": field_path},
    )


def _code_for(exc: CfxValidationError) -> str:
    # NegativeEntryError -> negative_entry, UnknownParameterError -> unknown_parameter
    name = type(exc).__name__.removesuffix("Error")
    return re.sub(r"(?<!^)(?=[A-Z])", "_", name).lower()


def _field_path_of(exc: CfxValidationError) -> str:
    for attr in ("field_path", "param_path"):
        value = getattr(exc, attr, None)
        if isinstance(value, str):
            return value
    return ""


def create_app(
    *,
    max_cases: int = 2_000_000,
    run_slots: int = 4,
    ui_dir: str | None = None,
) -> FastAPI:
    """Build the service.

    max_cases bounds n_cases for any single simulation, sweep grid point,
    compared scenario, or calibration. run_slots bounds how many simulation
    requests may run at once; beyond that the service answers 429 rather
    than queueing. ui_dir, when given, is served at / (index.html fallback).
    """
    app = FastAPI(title="cfx", version=__version__, docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    slots = threading.Semaphore(run_slots)
    workers = min(8, os.cpu_count() or 1)

    @app.exception_handler(RequestValidationError)
    async def _bad_request(request: Request, exc: RequestValidationError) -> JSONResponse:
        err = exc.errors()[0]
        loc = [str(p) for p in err["loc"] if p != "body"]
        return _error(400, "invalid_request", err["msg"], ".".join(loc))

    @app.exception_handler(CfxValidationError)
    async def _semantic(request: Request, exc: CfxValidationError) -> JSONResponse:
        return _error(422, _code_for(exc), str(exc), _field_path_of(exc))

    def _check_budget(n_cases: int) -> JSONResponse | None:
        if n_cases > max_cases:
            return _error(
                400,
                "cases_cap_exceeded",
                f"n_cases {n_cases} exceeds this service's cap of {max_cases}",
                "n_cases",
            )
        return None

    def _with_slot(fn):
        if not slots.acquire(blocking=False):
            return _error(429, "busy", f"all {run_slots} simulation slots are in use; retry later")
        try:
            return fn()
        finally:
            slots.release()

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok", "version": __version__}

    @app.get("/api/schema")
    def schema() -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "groups": list(PARAMETER_GROUPS),
            "parameters": parameter_schema(),
        }

    @app.get("/api/presets")
    def presets() -> dict:
        docs = [
            get_preset(name).model_dump(mode="json", exclude_none=True)
            for name in preset_names()
        ]
        return {"presets": docs}

    @app.post("/api/eu")
    def eu(body: EuRequest):
        validate_matrix(body.matrix)
        report = build_report(body.matrix, body.utilities, body.mode)
        analysis = discovery_analysis(body.matrix, body.utilities, body.mode)
        return {
            "report": report.model_dump(mode="json"),
            "discovery": analysis.model_dump(mode="json"),
        }

    @app.post("/api/simulate")
    def simulate(body: SimulateRequest):
        if (deny := _check_budget(body.n_cases)) is not None:
            return deny

        def run():
            result = run_scenario(
                body.scenario,
                body.n_cases,
                body.seed,
                workers=workers,
                sample_limit=body.sample_limit,
            )
            return {"result": result.model_dump(mode="json")}

        return _with_slot(run)

    @app.post("/api/sweep")
    def sweep_endpoint(body: SweepRequest):
        if (deny := _check_budget(body.n_cases)) is not None:
            return deny

        def run():
            result = sweep(
                body.scenario,
                body.param_path,
                body.values,
                body.n_cases,
                body.seed,
                workers=workers,
                seed_policy=body.seed_policy,
            )
            return {"sweep": result.model_dump(mode="json")}

        return _with_slot(run)

    @app.post("/api/compare")
    def compare(body: CompareRequest):
        if (deny := _check_budget(body.n_cases)) is not None:
            return deny
        if body.names is not None and len(body.names) != len(body.scenarios):
            return _error(
                400,
                "invalid_request",
                f"got {len(body.names)} names for {len(body.scenarios)} scenarios",
                "names",
            )

        def run():
            results = compare_scenarios(body.scenarios, body.n_cases, body.seed, workers=workers)
            names = body.names or tuple(f"scenario_{i}" for i in range(len(results)))
            return {
                "results": [r.model_dump(mode="json") for r in results],
                "names": list(names),
            }

        return _with_slot(run)

    @app.post("/api/calibrate")
    def calibrate(body: CalibrateRequest):
        if (deny := _check_budget(body.n_cases)) is not None:
            return deny

        def run():
            result = calibrate_thresholds(body.scenario, body.target_rate, body.n_cases, body.seed)
            return {"calibration": result.model_dump(mode="json")}

        return _with_slot(run)

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
