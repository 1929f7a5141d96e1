"""Config and result documents, their JSON/CSV serialization, and schema export.

A ScenarioDocument is the on-disk unit of configuration: a named bundle that
may carry a full simulation scenario, a raw outcomes matrix with utilities
for closed-form analysis, and optional sweep/run blocks. A ResultDocument is
what commands write back out. Both are strict: unknown fields are rejected
with their path, and loading can optionally require every parameter to be
spelled out rather than defaulted.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from . import __version__
from .core import (
    CELL_ORDER,
    CounterfactualMatrix,
    EUReport,
    Mode,
    UtilityModel,
    validate_matrix,
)
from .engine import (
    MAX_SWEEP_VALUES,
    ScenarioResult,
    SweepResult,
    _resolve_path,
)
from .errors import (
    CfxValidationError,
    ConfigParseError,
    ConfigValidationError,
    UnknownFieldError,
    UnknownParameterError,
)
from .scenario import Scenario

SCHEMA_VERSION = 1


class SweepSpec(BaseModel):
    """A sweep request embedded in a config: one dotted numeric parameter
    path and up to 32 grid values."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    param_path: str
    values: tuple[float, ...] = Field(min_length=1, max_length=MAX_SWEEP_VALUES)


class RunSpec(BaseModel):
    """Default run size and seed for a config; command-line flags win."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    n_cases: int = Field(100_000, ge=1)
    seed: int = Field(0, ge=0, le=2**64 - 1)


class ScenarioDocument(BaseModel):
    """Named configuration bundle.

    scenario drives simulation commands; matrix plus utilities drive the
    closed-form command. A document may carry both.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    schema_version: int = SCHEMA_VERSION
    name: str = ""
    description: str = ""
    scenario: Scenario | None = None
    matrix: CounterfactualMatrix | None = None
    utilities: UtilityModel | None = None
    mode: Mode = "reviewed"
    sweep: SweepSpec | None = None
    run: RunSpec | None = None

    @field_validator("schema_version")
    @classmethod
    def _supported_version(cls, v: int) -> int:
        if v != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {v}; this build reads {SCHEMA_VERSION}")
        return v


class ResultDocument(BaseModel):
    """What a command writes: its kind, provenance, and the payload slot for
    that kind. The timestamp stays None unless explicitly requested so that
    identical runs produce identical bytes."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    schema_version: int = SCHEMA_VERSION
    kind: Literal["eu", "simulate", "sweep", "compare", "calibrate"]
    name: str = ""
    tool_version: str = __version__
    seed: int | None = None
    n_cases: int | None = None
    mode: Mode | None = None
    timestamp: str | None = None
    matrix: CounterfactualMatrix | None = None
    report: EUReport | None = None
    result: ScenarioResult | None = None
    sweep: SweepResult | None = None
    results: tuple[ScenarioResult, ...] | None = None
    scenario_names: tuple[str, ...] | None = None
    calibration: dict[str, float] | None = None


def _first_error(exc: ValidationError) -> tuple[str, str, str]:
    err = exc.errors()[0]
    path = ".".join(str(p) for p in err["loc"])
    return path, err["type"], err["msg"]


def _validate_document(data: dict) -> ScenarioDocument:
    try:
        return ScenarioDocument.model_validate(data)
    except ValidationError as exc:
        path, kind, msg = _first_error(exc)
        if kind == "extra_forbidden":
            raise UnknownFieldError(path) from exc
        raise ConfigValidationError(path, msg) from exc


def _require_explicit(data: dict, model_cls: type[BaseModel], prefix: str) -> None:
    """Strict mode: every field of the model must appear in the data."""
    for name, field in model_cls.model_fields.items():
        path = f"{prefix}{name}"
        if name not in data:
            raise ConfigValidationError(path, "must be spelled out when defaults are disallowed")
        ann = field.annotation
        if isinstance(ann, type) and issubclass(ann, BaseModel) and isinstance(data[name], dict):
            _require_explicit(data[name], ann, f"{path}.")


def load_scenario(source: str | Path, *, allow_defaults: bool = True) -> ScenarioDocument:
    """Load a config document from a file path or raw JSON text.

    A str argument starting with "{" is treated as JSON text, anything else
    as a path. With allow_defaults=False, the scenario and utilities blocks
    (when present) must list every parameter explicitly.
    """
    if isinstance(source, Path) or not source.lstrip().startswith("{"):
        path = Path(source)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ConfigParseError(str(path), f"cannot read config: {exc}") from exc
        location = str(path)
    else:
        text = source
        location = "<text>"

    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(
            f"{location}, line {exc.lineno}, column {exc.colno}", exc.msg
        ) from exc
    if not isinstance(data, dict):
        raise ConfigValidationError("", "top level must be a JSON object")

    doc = _validate_document(data)

    if not allow_defaults:
        if "scenario" in data and isinstance(data["scenario"], dict):
            _require_explicit(data["scenario"], Scenario, "scenario.")
        if "utilities" in data and isinstance(data["utilities"], dict):
            _require_explicit(data["utilities"], UtilityModel, "utilities.")

    if doc.matrix is not None:
        try:
            validate_matrix(doc.matrix)
        except CfxValidationError as exc:
            raise ConfigValidationError("matrix", str(exc)) from exc

    if doc.sweep is not None and doc.scenario is not None:
        try:
            _resolve_path(doc.scenario, doc.sweep.param_path)
        except UnknownParameterError as exc:
            raise ConfigValidationError("sweep.param_path", str(exc)) from exc

    return doc


def dump_document(doc: BaseModel) -> str:
    """Canonical JSON text for a document: stable key order (declaration
    order), two-space indent, no None-valued fields, trailing newline."""
    return doc.model_dump_json(indent=2, exclude_none=True) + "\n"


# Fixed CSV metric order. p_* rows echo the estimated or given matrix.
_METRIC_ORDER = (
    "outcome_eu",
    "counter_eu",
    "usage_eu",
    "unaided_eu",
    "rel_outcome_eu",
    "rel_counter_eu",
    "rel_usage_eu",
    "sensitivity_aided",
    "specificity_aided",
    "sensitivity_unaided",
    "specificity_unaided",
    "mean_workload",
) + tuple(f"p_{c.value}" for c in CELL_ORDER)


def _fmt(v: float | None) -> str:
    if v is None:
        return "nan"
    return f"{v:.17g}"


def _metric_values(
    report: EUReport,
    matrix: CounterfactualMatrix | None,
    mean_workload: float | None,
) -> list[tuple[str, str]]:
    values = {
        "outcome_eu": report.outcome_eu,
        "counter_eu": report.counter_eu,
        "usage_eu": report.usage_eu,
        "unaided_eu": report.unaided_eu,
        "rel_outcome_eu": report.relative_outcome_eu,
        "rel_counter_eu": report.relative_counter_eu,
        "rel_usage_eu": report.relative_usage_eu,
        "sensitivity_aided": report.sensitivity_aided,
        "specificity_aided": report.specificity_aided,
        "sensitivity_unaided": report.sensitivity_unaided,
        "specificity_unaided": report.specificity_unaided,
    }
    rows = [(m, _fmt(values[m])) for m in _METRIC_ORDER[:11]]
    if mean_workload is not None:
        rows.append(("mean_workload", _fmt(mean_workload)))
    if matrix is not None:
        rows.extend((f"p_{c.value}", _fmt(matrix.value(c))) for c in CELL_ORDER)
    return rows


def results_to_csv(doc: ResultDocument) -> str:
    """Long-format CSV: scenario,param_value,metric,value with 17 significant
    digits, one block of metric rows per scenario/sweep point."""
    import csv
    import io as _io

    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["scenario", "param_value", "metric", "value"])

    def emit(scenario_name: str, param_value: str, result: ScenarioResult) -> None:
        for metric, value in _metric_values(result.report, result.matrix, result.mean_workload):
            writer.writerow([scenario_name, param_value, metric, value])

    if doc.kind == "eu":
        if doc.report is None:
            raise CfxValidationError("eu result document has no report")
        for metric, value in _metric_values(doc.report, doc.matrix, None):
            writer.writerow([doc.name, "", metric, value])
    elif doc.kind == "simulate":
        if doc.result is None:
            raise CfxValidationError("simulate result document has no result")
        emit(doc.name, "", doc.result)
    elif doc.kind == "sweep":
        if doc.sweep is None:
            raise CfxValidationError("sweep result document has no sweep payload")
        for value, result in zip(doc.sweep.values, doc.sweep.results):
            emit(doc.name, _fmt(value), result)
    elif doc.kind == "compare":
        if doc.results is None:
            raise CfxValidationError("compare result document has no results")
        names = doc.scenario_names or tuple(
            f"{doc.name}[{i}]" for i in range(len(doc.results))
        )
        for scenario_name, result in zip(names, doc.results):
            emit(scenario_name, "", result)
    else:
        raise CfxValidationError(f"no CSV form for result kind {doc.kind!r}")
    return buf.getvalue()


def write_results(doc: ResultDocument, destination: str | Path, format: str = "json") -> Path:
    """Serialize a result document to a file. format is "json" or "csv"."""
    path = Path(destination)
    if format == "json":
        text = dump_document(doc)
    elif format == "csv":
        text = results_to_csv(doc)
    else:
        raise CfxValidationError(f"unknown output format {format!r}")
    path.write_text(text)
    return path


def export_schemas(directory: str | Path) -> list[Path]:
    """Write JSON Schemas for the two document types; returns the paths."""
    out_dir = Path(directory)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for model, stem in (
        (ScenarioDocument, "scenario-document"),
        (ResultDocument, "result-document"),
    ):
        path = out_dir / f"{stem}.schema.json"
        path.write_text(json.dumps(model.model_json_schema(), indent=2, sort_keys=True) + "\n")
        written.append(path)
    return written
