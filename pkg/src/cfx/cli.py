"""Command-line interface.

Exit codes: 0 on success, 2 when inputs fail validation (bad config, bad
flag values, unknown parameters), 3 when a runtime failure stops an
otherwise valid request. Set CFX_LOG to a level name (DEBUG, INFO, ...) to
see engine progress on stderr.
"""

from __future__ import annotations

import functools
import logging
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

import click

from . import __version__
from .core import UtilityModel, build_report, discovery_analysis
from .engine import (
    calibrate_thresholds,
    compare_scenarios,
    run_scenario,
    sweep as run_sweep,
)
from .errors import CfxValidationError, ConfigValidationError
from .io import ResultDocument, ScenarioDocument, dump_document, load_scenario, write_results
from .presets import get_preset, preset_names

log = logging.getLogger("cfx")


def _configure_logging() -> None:
    level = os.environ.get("CFX_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def _guarded(fn):
    """Map validation failures to exit 2 and runtime failures to exit 3."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except CfxValidationError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
        except click.ClickException:
            raise
        except Exception as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(3)

    return wrapper


def _stamp_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _emit(doc: ResultDocument, out: str | None, fmt: str, human: str) -> None:
    if out is None:
        click.echo(human)
    else:
        path = write_results(doc, Path(out), fmt)
        click.echo(f"wrote {path}", err=True)


def _float(v: float | None) -> str:
    return "nan" if v is None else repr(v)


def _report_lines(report) -> list[str]:
    return [
        f"outcome_eu          {_float(report.outcome_eu)}",
        f"counter_eu          {_float(report.counter_eu)}",
        f"usage_eu            {_float(report.usage_eu)}",
        f"unaided_eu          {_float(report.unaided_eu)}",
        f"rel_outcome_eu      {_float(report.relative_outcome_eu)}",
        f"rel_counter_eu      {_float(report.relative_counter_eu)}",
        f"rel_usage_eu        {_float(report.relative_usage_eu)}",
        f"sensitivity_aided   {_float(report.sensitivity_aided)}",
        f"specificity_aided   {_float(report.specificity_aided)}",
        f"sensitivity_unaided {_float(report.sensitivity_unaided)}",
        f"specificity_unaided {_float(report.specificity_unaided)}",
    ]


def _result_lines(result) -> list[str]:
    lines = _report_lines(result.report)
    lines.append(f"mean_workload       {_float(result.mean_workload)}")
    lines.append("cells    " + " ".join(f"{k}={v}" for k, v in result.cell_counts.items()))
    lines.append("branches " + " ".join(f"{k}={v}" for k, v in result.branch_counts.items()))
    return lines


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.version_option(version=__version__, prog_name="cfx")
def main() -> None:
    """Expected-utility analysis of AI-assisted binary decisions."""
    _configure_logging()


_config_opt = click.option("--config", "-c", "config_path", required=True,
                           type=click.Path(), help="Config document (JSON).")
_strict_opt = click.option("--strict", is_flag=True,
                           help="Reject configs that rely on parameter defaults.")
_out_opt = click.option("--out", "-o", "out", type=click.Path(), default=None,
                        help="Write results to this file instead of printing a summary.")
_format_opt = click.option("--format", "-f", "fmt", type=click.Choice(["json", "csv"]),
                           default="json", show_default=True, help="Output file format.")
_stamp_opt = click.option("--stamp", is_flag=True,
                          help="Record the current UTC time in the result document.")
_cases_opt = click.option("--cases", "-n", "n_cases", type=int, default=None,
                          help="Number of simulated cases (default from config, else 100000).")
_seed_opt = click.option("--seed", type=int, default=None,
                         help="Random seed (default from config, else 0).")
_workers_opt = click.option("--workers", type=int, default=1, show_default=True,
                            help="Worker threads; never changes results.")


@main.command()
@_config_opt
@click.option("--mode", type=click.Choice(["automated", "reviewed"]), default=None,
              help="Counterfactual utility table to apply (default from config).")
@_strict_opt
@_out_opt
@_format_opt
@_stamp_opt
@_guarded
def eu(config_path: str, mode: str | None, strict: bool, out: str | None, fmt: str, stamp: bool) -> None:
    """Closed-form expected utilities for a config's outcomes matrix."""
    doc = load_scenario(config_path, allow_defaults=not strict)
    if doc.matrix is None:
        raise ConfigValidationError("matrix", "required by the eu command")
    utilities = doc.utilities if doc.utilities is not None else UtilityModel()
    use_mode = mode or doc.mode
    report = build_report(doc.matrix, utilities, use_mode)
    analysis = discovery_analysis(doc.matrix, utilities, use_mode)
    result = ResultDocument(
        kind="eu",
        name=doc.name,
        mode=use_mode,
        timestamp=_stamp_now() if stamp else None,
        matrix=doc.matrix,
        report=report,
    )
    human = "\n".join(
        _report_lines(report)
        + [
            f"one_sided_negative  {str(analysis.one_sided_negative).lower()}",
            f"dominant_cell       {analysis.dominant_cell.value if analysis.dominant_cell else 'none'}",
        ]
    )
    _emit(result, out, fmt, human)


def _run_params(doc: ScenarioDocument, n_cases: int | None, seed: int | None) -> tuple[int, int]:
    if n_cases is None:
        n_cases = doc.run.n_cases if doc.run is not None else 100_000
    if seed is None:
        seed = doc.run.seed if doc.run is not None else 0
    return n_cases, seed


@main.command()
@_config_opt
@_cases_opt
@_seed_opt
@_workers_opt
@click.option("--samples", type=int, default=0, show_default=True,
              help="Include this many leading episodes in the result.")
@_strict_opt
@_out_opt
@_format_opt
@_stamp_opt
@_guarded
def simulate(config_path: str, n_cases: int | None, seed: int | None, workers: int,
             samples: int, strict: bool, out: str | None, fmt: str, stamp: bool) -> None:
    """Monte Carlo run of a config's scenario."""
    doc = load_scenario(config_path, allow_defaults=not strict)
    if doc.scenario is None:
        raise ConfigValidationError("scenario", "required by the simulate command")
    n_cases, seed = _run_params(doc, n_cases, seed)
    log.info("simulate %s: %d cases, seed %d", doc.name or config_path, n_cases, seed)
    result = run_scenario(doc.scenario, n_cases, seed, workers=workers, sample_limit=samples)
    out_doc = ResultDocument(
        kind="simulate",
        name=doc.name,
        seed=seed,
        n_cases=n_cases,
        timestamp=_stamp_now() if stamp else None,
        result=result,
    )
    _emit(out_doc, out, fmt, "\n".join(_result_lines(result)))


@main.command(name="sweep")
@_config_opt
@click.option("--param", "param_path", default=None,
              help="Dotted numeric scenario parameter (default from config sweep block).")
@click.option("--values", "values_text", default=None,
              help="Comma-separated grid values (default from config sweep block).")
@click.option("--seed-policy", type=click.Choice(["shared", "per_value"]), default="shared",
              show_default=True, help="Same seed at every point, or one derived per point.")
@_cases_opt
@_seed_opt
@_workers_opt
@_strict_opt
@_out_opt
@_format_opt
@_stamp_opt
@_guarded
def sweep_cmd(config_path: str, param_path: str | None, values_text: str | None,
              seed_policy: str, n_cases: int | None, seed: int | None, workers: int,
              strict: bool, out: str | None, fmt: str, stamp: bool) -> None:
    """Run a scenario across a grid of one parameter's values."""
    doc = load_scenario(config_path, allow_defaults=not strict)
    if doc.scenario is None:
        raise ConfigValidationError("scenario", "required by the sweep command")
    if param_path is None:
        if doc.sweep is None:
            raise ConfigValidationError("sweep", "config has no sweep block; pass --param and --values")
        param_path = doc.sweep.param_path
    if values_text is None:
        if doc.sweep is None:
            raise ConfigValidationError("sweep", "config has no sweep block; pass --values")
        values = tuple(doc.sweep.values)
    else:
        try:
            values = tuple(float(v) for v in values_text.split(",") if v.strip() != "")
        except ValueError as exc:
            raise ConfigValidationError("values", f"not a comma-separated float list: {exc}") from exc
    n_cases, seed = _run_params(doc, n_cases, seed)
    result = run_sweep(doc.scenario, param_path, values, n_cases, seed,
                       workers=workers, seed_policy=seed_policy)
    out_doc = ResultDocument(
        kind="sweep",
        name=doc.name,
        seed=seed,
        n_cases=n_cases,
        timestamp=_stamp_now() if stamp else None,
        sweep=result,
    )
    lines = [f"{result.param_path} rel_outcome_eu rel_counter_eu rel_usage_eu"]
    for v, ro, rc, ru in zip(result.values, result.relative_outcome_eu,
                             result.relative_counter_eu, result.relative_usage_eu):
        lines.append(f"{v:g} {ro!r} {rc!r} {ru!r}")
    _emit(out_doc, out, fmt, "\n".join(lines))


@main.command()
@click.option("--config", "-c", "config_paths", multiple=True, required=True,
              type=click.Path(), help="Config document; repeat for each scenario (up to 5).")
@_cases_opt
@_seed_opt
@_workers_opt
@_strict_opt
@_out_opt
@_format_opt
@_stamp_opt
@_guarded
def compare(config_paths: tuple[str, ...], n_cases: int | None, seed: int | None,
            workers: int, strict: bool, out: str | None, fmt: str, stamp: bool) -> None:
    """Run several configs' scenarios at a shared seed."""
    docs = [load_scenario(p, allow_defaults=not strict) for p in config_paths]
    for p, d in zip(config_paths, docs):
        if d.scenario is None:
            raise ConfigValidationError("scenario", f"required by the compare command (in {p})")
    n_cases = n_cases if n_cases is not None else 100_000
    seed = seed if seed is not None else 0
    results = compare_scenarios([d.scenario for d in docs], n_cases, seed, workers=workers)
    names = tuple(d.name or p for d, p in zip(docs, config_paths))
    out_doc = ResultDocument(
        kind="compare",
        name="compare",
        seed=seed,
        n_cases=n_cases,
        timestamp=_stamp_now() if stamp else None,
        results=results,
        scenario_names=names,
    )
    lines = []
    for name, result in zip(names, results):
        lines.append(f"== {name}")
        lines.extend(_result_lines(result))
    _emit(out_doc, out, fmt, "\n".join(lines))


@main.group()
def presets() -> None:
    """Built-in scenario presets."""


@presets.command(name="list")
@_guarded
def presets_list() -> None:
    """Name and one-line description of each preset."""
    for name in preset_names():
        doc = get_preset(name)
        first = doc.description.split(". ")[0].rstrip(".")
        click.echo(f"{name}  {first}.")


@presets.command(name="show")
@click.argument("name")
@_guarded
def presets_show(name: str) -> None:
    """Full config document of one preset, as JSON."""
    click.echo(dump_document(get_preset(name)), nl=False)


@presets.command(name="run")
@click.argument("name")
@_cases_opt
@_seed_opt
@_workers_opt
@click.option("--samples", type=int, default=0, show_default=True,
              help="Episodes to include when the preset runs a single simulation.")
@_out_opt
@_format_opt
@_stamp_opt
@_guarded
def presets_run(name: str, n_cases: int | None, seed: int | None, workers: int,
                samples: int, out: str | None, fmt: str, stamp: bool) -> None:
    """Run a preset: its sweep when it has one, a single run otherwise."""
    doc = get_preset(name)
    assert doc.scenario is not None
    n_cases, seed = _run_params(doc, n_cases, seed)
    stamp_value = _stamp_now() if stamp else None
    if doc.sweep is not None:
        result = run_sweep(doc.scenario, doc.sweep.param_path, doc.sweep.values,
                           n_cases, seed, workers=workers)
        out_doc = ResultDocument(kind="sweep", name=doc.name, seed=seed, n_cases=n_cases,
                                 timestamp=stamp_value, sweep=result)
        lines = [f"{result.param_path} rel_outcome_eu rel_counter_eu rel_usage_eu"]
        for v, ro, rc, ru in zip(result.values, result.relative_outcome_eu,
                                 result.relative_counter_eu, result.relative_usage_eu):
            lines.append(f"{v:g} {ro!r} {rc!r} {ru!r}")
        _emit(out_doc, out, fmt, "\n".join(lines))
    else:
        single = run_scenario(doc.scenario, n_cases, seed, workers=workers, sample_limit=samples)
        out_doc = ResultDocument(kind="simulate", name=doc.name, seed=seed, n_cases=n_cases,
                                 timestamp=stamp_value, result=single)
        _emit(out_doc, out, fmt, "\n".join(_result_lines(single)))


@main.command(name="calibrate-thresholds")
@_config_opt
@click.option("--target-rate", type=float, required=True,
              help="Fraction of cases the AI should be confident on, in [0, 1].")
@_cases_opt
@_seed_opt
@_strict_opt
@_out_opt
@_stamp_opt
@_guarded
def calibrate(config_path: str, target_rate: float, n_cases: int | None, seed: int | None,
              strict: bool, out: str | None, stamp: bool) -> None:
    """Pick symmetric AI confident-band thresholds for a target confident rate."""
    doc = load_scenario(config_path, allow_defaults=not strict)
    if doc.scenario is None:
        raise ConfigValidationError("scenario", "required by the calibrate-thresholds command")
    n_cases = n_cases if n_cases is not None else 100_000
    seed = seed if seed is not None else 0
    cal = calibrate_thresholds(doc.scenario, target_rate, n_cases, seed)
    out_doc = ResultDocument(
        kind="calibrate",
        name=doc.name,
        seed=seed,
        n_cases=n_cases,
        timestamp=_stamp_now() if stamp else None,
        calibration={
            "pos_threshold": cal.pos_threshold,
            "neg_threshold": cal.neg_threshold,
            "target_rate": cal.target_rate,
            "achieved_rate": cal.achieved_rate,
        },
    )
    human = "\n".join(
        [
            f"pos_threshold  {cal.pos_threshold!r}",
            f"neg_threshold  {cal.neg_threshold!r}",
            f"target_rate    {cal.target_rate!r}",
            f"achieved_rate  {cal.achieved_rate!r}",
        ]
    )
    _emit(out_doc, out, "json", human)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--max-cases", type=int, default=2_000_000, show_default=True,
              help="Largest n_cases a single request may ask for.")
@click.option("--run-slots", type=int, default=4, show_default=True,
              help="Concurrent simulation requests before the service answers busy.")
@click.option("--ui-dir", type=click.Path(), default=None,
              help="Directory of static UI files to serve at /.")
@_guarded
def serve(host: str, port: int, max_cases: int, run_slots: int, ui_dir: str | None) -> None:
    """Serve the HTTP API (and optionally the bundled UI)."""
    import uvicorn

    from .service import create_app

    app = create_app(max_cases=max_cases, run_slots=run_slots, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()
