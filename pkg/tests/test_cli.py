"""Command-line interface: outputs, exit codes, file writing, determinism."""

import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from cfx import ResultDocument, ScenarioDocument, dump_document, get_preset
from cfx.cli import main

CONFIGS = Path(__file__).resolve().parents[1] / "configs"
WORKED = str(CONFIGS / "worked_example.json")
TRIAGE = str(CONFIGS / "triage_baseline.json")
PAROLE = str(CONFIGS / "parole_replacement.json")


@pytest.fixture()
def runner():
    return CliRunner()


def test_version(runner):
    result = runner.invoke(main, ["--version"])
    assert result.exit_code == 0
    assert "cfx" in result.output


def test_eu_human_summary(runner):
    result = runner.invoke(main, ["eu", "-c", WORKED])
    assert result.exit_code == 0
    lines = dict(
        line.split(maxsplit=1) for line in result.output.strip().splitlines()
    )
    assert lines["outcome_eu"] == "0.4"
    assert lines["counter_eu"] == "-0.24825"
    assert lines["usage_eu"] == "0.15175000000000002"
    assert lines["unaided_eu"] == "0.1800000000000001"
    assert lines["one_sided_negative"] == "false"
    assert lines["dominant_cell"] == "CFN"


def test_eu_mode_flag_overrides_config(runner, tmp_path):
    base = runner.invoke(main, ["eu", "-c", PAROLE])
    assert base.exit_code == 0
    fields = dict(l.split(maxsplit=1) for l in base.output.strip().splitlines())
    assert fields["one_sided_negative"] == "true"

    # a config whose two counterfactual tables differ shows the flag working
    cfg = tmp_path / "modes.json"
    cfg.write_text(json.dumps({
        "matrix": {"NTP": 0.135, "CTP": 0.025, "CFN": 0.01, "NFN": 0.03,
                   "NFP": 0.09, "CFP": 0.07, "CTN": 0.09, "NTN": 0.55},
        "utilities": {"counterfactual_automated": {"CFN": -60.0}},
        "mode": "automated",
    }))
    auto = runner.invoke(main, ["eu", "-c", str(cfg)])
    reviewed = runner.invoke(main, ["eu", "-c", str(cfg), "--mode", "reviewed"])
    assert auto.exit_code == 0 and reviewed.exit_code == 0
    get = lambda r: dict(l.split(maxsplit=1) for l in r.output.strip().splitlines())
    assert float(get(auto)["counter_eu"]) < float(get(reviewed)["counter_eu"])
    assert get(reviewed)["counter_eu"] == "-0.24825"


def test_eu_json_out(runner, tmp_path):
    out = tmp_path / "eu.json"
    result = runner.invoke(main, ["eu", "-c", WORKED, "-o", str(out)])
    assert result.exit_code == 0
    assert f"wrote {out}" in result.stderr
    doc = ResultDocument.model_validate_json(out.read_text())
    assert doc.kind == "eu"
    assert doc.name == "worked_example"
    assert doc.report.outcome_eu == 0.4
    assert doc.timestamp is None


def test_eu_csv_out(runner, tmp_path):
    out = tmp_path / "eu.csv"
    result = runner.invoke(main, ["eu", "-c", WORKED, "-o", str(out), "-f", "csv"])
    assert result.exit_code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "scenario,param_value,metric,value"
    assert lines[1] == "worked_example,,outcome_eu,0.40000000000000002"


def test_eu_stamp_records_time(runner, tmp_path):
    out = tmp_path / "eu.json"
    result = runner.invoke(main, ["eu", "-c", WORKED, "-o", str(out), "--stamp"])
    assert result.exit_code == 0
    stamp = json.loads(out.read_text())["timestamp"]
    assert "T" in stamp and stamp.endswith("+00:00")


def test_eu_requires_matrix(runner):
    result = runner.invoke(main, ["eu", "-c", TRIAGE])
    assert result.exit_code == 2
    assert "matrix" in result.stderr


def test_missing_config_file(runner):
    result = runner.invoke(main, ["eu", "-c", "/no/such/file.json"])
    assert result.exit_code == 2
    assert "error:" in result.stderr


def test_invalid_config_value(runner, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"scenario": {"prior": 2.0}}')
    result = runner.invoke(main, ["simulate", "-c", str(bad)])
    assert result.exit_code == 2
    assert "scenario.prior" in result.stderr


def test_unwritable_output_is_runtime_failure(runner):
    result = runner.invoke(main, ["eu", "-c", WORKED, "-o", "/no-such-dir/out.json"])
    assert result.exit_code == 3


def test_strict_rejects_defaulted_scenario(runner):
    result = runner.invoke(main, ["simulate", "-c", TRIAGE, "--strict", "-n", "64"])
    assert result.exit_code == 2
    assert "scenario." in result.stderr


def test_simulate_human_summary(runner):
    result = runner.invoke(main, ["simulate", "-c", TRIAGE, "-n", "2048", "--seed", "1"])
    assert result.exit_code == 0
    assert "usage_eu" in result.output
    assert "cells" in result.output
    assert "branches" in result.output
    assert "mean_workload" in result.output


def test_simulate_deterministic_files(runner, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        result = runner.invoke(
            main, ["simulate", "-c", TRIAGE, "-n", "4096", "--seed", "9", "-o", str(path)]
        )
        assert result.exit_code == 0
    assert a.read_bytes() == b.read_bytes()


def test_simulate_workers_do_not_change_output(runner, tmp_path):
    a, b = tmp_path / "w1.json", tmp_path / "w3.json"
    r1 = runner.invoke(
        main, ["simulate", "-c", TRIAGE, "-n", "4096", "--seed", "2", "-o", str(a)]
    )
    r3 = runner.invoke(
        main,
        ["simulate", "-c", TRIAGE, "-n", "4096", "--seed", "2", "--workers", "3", "-o", str(b)],
    )
    assert r1.exit_code == 0 and r3.exit_code == 0
    assert a.read_bytes() == b.read_bytes()


def test_simulate_samples_included(runner, tmp_path):
    out = tmp_path / "s.json"
    result = runner.invoke(
        main,
        ["simulate", "-c", TRIAGE, "-n", "256", "--seed", "0", "--samples", "5", "-o", str(out)],
    )
    assert result.exit_code == 0
    doc = ResultDocument.model_validate_json(out.read_text())
    assert len(doc.result.episodes) == 5
    assert [e.case_index for e in doc.result.episodes] == [0, 1, 2, 3, 4]


def test_simulate_run_block_supplies_defaults(runner, tmp_path):
    # config run block says n_cases 200000; cap it with -n but leave seed alone
    out = tmp_path / "r.json"
    result = runner.invoke(main, ["simulate", "-c", TRIAGE, "-n", "512", "-o", str(out)])
    assert result.exit_code == 0
    doc = ResultDocument.model_validate_json(out.read_text())
    assert doc.n_cases == 512
    assert doc.seed == 0


def test_sweep_from_config_block(runner, tmp_path):
    out = tmp_path / "sw.json"
    result = runner.invoke(main, ["sweep", "-c", TRIAGE, "-n", "1024", "-o", str(out)])
    assert result.exit_code == 0
    doc = ResultDocument.model_validate_json(out.read_text())
    assert doc.kind == "sweep"
    assert doc.sweep.param_path == "algorithm_complementarity"
    assert doc.sweep.values == (0.0, 0.25, 0.5, 0.75, 1.0)


def test_sweep_flags_override_config(runner):
    result = runner.invoke(
        main,
        ["sweep", "-c", TRIAGE, "--param", "prior", "--values", "0.2,0.4", "-n", "1024"],
    )
    assert result.exit_code == 0
    assert result.output.splitlines()[0].startswith("prior ")
    assert len(result.output.strip().splitlines()) == 3


def test_sweep_bad_values_text(runner):
    result = runner.invoke(
        main, ["sweep", "-c", TRIAGE, "--param", "prior", "--values", "0.2,x"]
    )
    assert result.exit_code == 2
    assert "values" in result.stderr


def test_sweep_without_block_needs_flags(runner, tmp_path):
    bare = tmp_path / "bare.json"
    bare.write_text('{"scenario": {}}')
    result = runner.invoke(main, ["sweep", "-c", str(bare), "-n", "64"])
    assert result.exit_code == 2
    assert "sweep" in result.stderr


def test_sweep_csv_out(runner, tmp_path):
    out = tmp_path / "sw.csv"
    result = runner.invoke(
        main,
        ["sweep", "-c", TRIAGE, "--param", "prior", "--values", "0.2,0.4",
         "-n", "512", "-o", str(out), "-f", "csv"],
    )
    assert result.exit_code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "scenario,param_value,metric,value"
    assert len(lines) == 1 + 2 * 20


def test_compare_two_configs(runner, tmp_path):
    other = tmp_path / "other.json"
    other.write_text(
        '{"name": "solo", "scenario": {"use_pattern": "UP5"}}'
    )
    out = tmp_path / "cmp.json"
    result = runner.invoke(
        main,
        ["compare", "-c", TRIAGE, "-c", str(other), "-n", "1024", "--seed", "4", "-o", str(out)],
    )
    assert result.exit_code == 0
    doc = ResultDocument.model_validate_json(out.read_text())
    assert doc.kind == "compare"
    assert doc.scenario_names == ("triage_baseline", "solo")
    assert len(doc.results) == 2


def test_compare_human_output_names_blocks(runner, tmp_path):
    result = runner.invoke(main, ["compare", "-c", TRIAGE, "-c", TRIAGE, "-n", "512"])
    assert result.exit_code == 0
    assert result.output.count("== triage_baseline") == 2


def test_presets_list(runner):
    result = runner.invoke(main, ["presets", "list"])
    assert result.exit_code == 0
    lines = result.output.strip().splitlines()
    assert len(lines) == 6
    assert lines[0].startswith("sim1  ")
    assert lines[-1].startswith("sim6  ")


def test_presets_show_round_trips(runner):
    result = runner.invoke(main, ["presets", "show", "sim3"])
    assert result.exit_code == 0
    assert result.output == dump_document(get_preset("sim3"))
    loaded = ScenarioDocument.model_validate_json(result.output)
    assert loaded == get_preset("sim3")


def test_presets_show_unknown(runner):
    result = runner.invoke(main, ["presets", "show", "sim9"])
    assert result.exit_code == 2
    assert "sim9" in result.stderr


def test_presets_run_small(runner, tmp_path):
    out = tmp_path / "p.json"
    result = runner.invoke(
        main, ["presets", "run", "sim2", "-n", "1024", "--seed", "0", "-o", str(out)]
    )
    assert result.exit_code == 0
    doc = ResultDocument.model_validate_json(out.read_text())
    # presets carry a sweep block, so run produces the sweep
    assert doc.kind == "sweep"
    assert doc.name == "sim2"
    assert len(doc.sweep.values) == 5


def test_calibrate_thresholds_output(runner, tmp_path):
    out = tmp_path / "cal.json"
    result = runner.invoke(
        main,
        ["calibrate-thresholds", "-c", TRIAGE, "--target-rate", "0.5",
         "-n", "50000", "--seed", "1", "-o", str(out)],
    )
    assert result.exit_code == 0
    doc = ResultDocument.model_validate_json(out.read_text())
    assert doc.kind == "calibrate"
    cal = doc.calibration
    assert set(cal) == {"pos_threshold", "neg_threshold", "target_rate", "achieved_rate"}
    assert cal["target_rate"] == 0.5
    assert abs(cal["achieved_rate"] - 0.5) < 0.02
    mid_pos = cal["pos_threshold"] - 0.5
    mid_neg = 0.5 - cal["neg_threshold"]
    assert abs(mid_pos - mid_neg) < 1e-12


def test_calibrate_bad_rate(runner):
    result = runner.invoke(
        main, ["calibrate-thresholds", "-c", TRIAGE, "--target-rate", "1.5", "-n", "100"]
    )
    assert result.exit_code == 2
