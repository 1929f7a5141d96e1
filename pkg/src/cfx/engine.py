"""Monte Carlo engine for assisted-decision scenarios.

Each simulated case follows one generative pipeline: the world draws a
ground truth and an evidence strength, both judges read that evidence
through their own noise, both apply a directional correction toward the
truth, and the active use pattern wires the two final strengths into one
issued verdict plus a branch label recording how it was reached. All
strengths are clamped to [0, 1] after every additive stage.

Reproducibility contract: results are a pure function of (scenario,
n_cases, seed) and never depend on the worker count. Cases are simulated in
fixed blocks of BLOCK, each block driven by a counter-based generator keyed
by (block index, seed), with the same eight draw arrays consumed in the
same order regardless of use pattern. Aggregation happens in integer
(branch, cell) counts, so any scheduling of blocks yields bit-identical
results, and unassisted verdicts at a given seed are bit-identical across
use patterns.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict

from . import core
from .core import (
    CELL_ORDER,
    CellKind,
    CounterfactualMatrix,
    Decision,
    EUReport,
    GroundTruth,
    UtilityModel,
    matrix_from_counts,
)
from .errors import (
    EmptyEpisodeSetError,
    InvalidScenarioError,
    TooManyScenariosError,
    TooManyValuesError,
    UnknownParameterError,
)
from .scenario import BRANCH_ORDER, Branch, Scenario, UsePattern

BLOCK = 16384
MAX_SWEEP_VALUES = 32
MAX_COMPARE_SCENARIOS = 5

_CELL_INDEX = {c: i for i, c in enumerate(CELL_ORDER)}
_BRANCH_INDEX = {b: i for i, b in enumerate(BRANCH_ORDER)}

# Calibration draws live in their own key space, far above any case block.
_CALIBRATION_BLOCK = 1 << 62


class Confidence(str, Enum):
    CONFIDENT_POSITIVE = "confident_positive"
    CONFIDENT_NEGATIVE = "confident_negative"
    UNCERTAIN = "uncertain"


def clip01(x):
    """Clamp strengths into [0, 1]; works on scalars and arrays."""
    return np.clip(x, 0.0, 1.0)


def decide(strength):
    """Verdict from a strength: positive at or above 0.5 (ties go positive).

    Returns a bool for scalar input, a boolean array otherwise. True stands
    for the verdict "T".
    """
    out = np.greater_equal(strength, 0.5)
    return bool(out) if np.ndim(out) == 0 else out


def confidence_class(strength: float, pos_threshold: float, neg_threshold: float) -> Confidence:
    """Classify a strength against a confident band.

    The positive test runs first. Thresholds outside [0, 1] act as
    sentinels: pos above 1 or neg below 0 make that band unreachable.
    """
    if strength >= pos_threshold:
        return Confidence.CONFIDENT_POSITIVE
    if strength <= neg_threshold:
        return Confidence.CONFIDENT_NEGATIVE
    return Confidence.UNCERTAIN


def sample_ground_truth(prior: float, rng: np.random.Generator, size=None):
    """Bernoulli ground truth; True with probability prior."""
    if size is None:
        return bool(rng.random() < prior)
    return rng.random(size) < prior


def sample_base_strength(gt, obviousness: float, std: float, rng: np.random.Generator):
    """Evidence strength of the case itself, centered off 0.5 toward the truth."""
    gt_arr = np.asarray(gt, dtype=bool)
    sign = np.where(gt_arr, 1.0, -1.0)
    z = rng.standard_normal(gt_arr.shape if gt_arr.shape else None)
    out = clip01(0.5 + sign * (obviousness / 2.0) + std * z)
    return float(out) if np.ndim(out) == 0 else out


def sample_perceptions(
    bss,
    ai_std: float,
    dm_std: float,
    complementarity: float,
    rng: np.random.Generator,
):
    """Both judges' noisy readings of the same evidence.

    The decision maker's noise correlates with the AI's at rho = 1 -
    complementarity, so 0 complementarity with equal stds reproduces the AI
    reading exactly and 1 makes the two readings independent. The marginal
    distribution of each reading does not depend on complementarity.
    """
    bss_arr = np.asarray(bss, dtype=float)
    shape = bss_arr.shape if bss_arr.shape else None
    z_ai = rng.standard_normal(shape)
    z_ind = rng.standard_normal(shape)
    rho = 1.0 - complementarity
    z_dm = rho * z_ai + math.sqrt(max(0.0, 1.0 - rho * rho)) * z_ind
    ai = clip01(bss_arr + ai_std * z_ai)
    dm = clip01(bss_arr + dm_std * z_dm)
    if np.ndim(ai) == 0:
        return float(ai), float(dm)
    return ai, dm


def apply_directional(perceived, gt, strength: float, std: float, rng: np.random.Generator):
    """Shift a reading toward the truth by a draw from N(strength, std).

    A negative draw moves the reading away from the truth. Clamped.
    """
    gt_arr = np.asarray(gt, dtype=bool)
    sign = np.where(gt_arr, 1.0, -1.0)
    z = rng.standard_normal(gt_arr.shape if gt_arr.shape else None)
    out = clip01(np.asarray(perceived, dtype=float) + sign * (strength + std * z))
    return float(out) if np.ndim(out) == 0 else out


class Episode(BaseModel):
    """One simulated case, in serialization-ready form."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    case_index: int
    gt: GroundTruth
    base_strength: float
    ai_strength: float
    dm_strength: float
    ai_verdict: Decision
    unaided_verdict: Decision
    aided_verdict: Decision
    branch: Branch
    cell: CellKind
    discovered: bool
    workload: float


class ScenarioResult(BaseModel):
    """Everything one run produces: counts, the estimated matrix, the
    expected-utility report, workload, and optional sampled episodes."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    scenario: Scenario
    n_cases: int
    seed: int
    cell_counts: dict[str, int]
    branch_counts: dict[str, int]
    joint_counts: dict[str, dict[str, int]]
    discovered_counts: dict[str, int]
    matrix: CounterfactualMatrix
    report: EUReport
    mean_workload: float
    episodes: tuple[Episode, ...] = ()


class SweepResult(BaseModel):
    """One scenario swept along one numeric parameter."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    param_path: str
    values: tuple[float, ...]
    seed_policy: str
    results: tuple[ScenarioResult, ...]
    relative_outcome_eu: tuple[float, ...]
    relative_counter_eu: tuple[float, ...]
    relative_usage_eu: tuple[float, ...]


class CalibrationResult(BaseModel):
    """Symmetric confident-band thresholds hitting a target confident rate."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    pos_threshold: float
    neg_threshold: float
    target_rate: float
    achieved_rate: float
    n_cases: int
    seed: int


@dataclass(frozen=True)
class _Compiled:
    """Scenario unpacked into plain floats and per-index tables."""

    prior: float
    obviousness: float
    base_std: float
    ai_std: float
    dm_std: float
    rho: float
    ind_scale: float
    ai_dir_mu: float
    ai_dir_sd: float
    dm_dir_mu: float
    dm_dir_sd: float
    ai_pos: float
    ai_neg: float
    dm_pos: float
    dm_neg: float
    pattern: UsePattern
    anchor_w: float
    boost_mu: float
    boost_sd: float
    disc_mu: float
    disc_sd: float
    discovery_by_cell: np.ndarray
    workload_by_branch: np.ndarray


def _utility_tables(u: UtilityModel) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Per-cell utility lookups in CELL_ORDER, plus the (branch, cell) table
    of expected counterfactual utility (discovery times counterfactual
    utility, with the automated table on the auto-accept branch)."""
    o = u.outcome
    outcome_by_cell = np.array([o.TP, o.TP, o.FN, o.FN, o.FP, o.FP, o.TN, o.TN])
    unaided_by_cell = np.array([o.TP, o.FN, o.TP, o.FN, o.FP, o.TN, o.FP, o.TN])
    d = u.discovery
    discovery_by_cell = np.array([0.0, d.CTP, d.CFN, 0.0, 0.0, d.CFP, d.CTN, 0.0])
    counter = np.zeros((len(BRANCH_ORDER), len(CELL_ORDER)))
    for bi, branch in enumerate(BRANCH_ORDER):
        table = u.counterfactual("automated" if branch is Branch.AUTO_ACCEPT else "reviewed")
        cu_by_cell = np.array([0.0, table.CTP, table.CFN, 0.0, 0.0, table.CFP, table.CTN, 0.0])
        counter[bi] = discovery_by_cell * cu_by_cell
    return outcome_by_cell, unaided_by_cell, discovery_by_cell, counter


def _compile(s: Scenario) -> _Compiled:
    _, _, discovery_by_cell, _ = _utility_tables(s.utilities)
    rho = 1.0 - s.algorithm_complementarity
    return _Compiled(
        prior=s.prior,
        obviousness=s.obviousness,
        base_std=s.base_strength_std,
        ai_std=s.ai_bss_std,
        dm_std=s.dm_bss_std,
        rho=rho,
        ind_scale=math.sqrt(max(0.0, 1.0 - rho * rho)),
        ai_dir_mu=s.ai_directional_strength,
        ai_dir_sd=s.ai_directional_std,
        dm_dir_mu=s.dm_directional_strength,
        dm_dir_sd=s.dm_directional_std,
        ai_pos=s.ai_pos_threshold,
        ai_neg=s.ai_neg_threshold,
        dm_pos=s.dm_pos_threshold,
        dm_neg=s.dm_neg_threshold,
        pattern=s.use_pattern,
        anchor_w=s.anchor_weight,
        boost_mu=s.explanatory_boost_strength,
        boost_sd=s.explanatory_boost_std,
        disc_mu=s.directional_discrimination_strength,
        disc_sd=s.directional_discrimination_std,
        discovery_by_cell=discovery_by_cell,
        workload_by_branch=np.array([s.workload.value(b) for b in BRANCH_ORDER]),
    )


def _block_rng(seed: int, block_index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=(block_index << 64) | seed))


@dataclass
class _BlockOut:
    joint: np.ndarray       # (branches, cells) int64
    discovered: np.ndarray  # (cells,) int64
    trace: dict | None


def _simulate_block(
    c: _Compiled, start: int, size: int, rng: np.random.Generator, keep_trace: bool
) -> _BlockOut:
    # Fixed draw order; every array is consumed for every use pattern so
    # that streams stay aligned across patterns at the same seed.
    u_gt = rng.random(size)
    z_bss = rng.standard_normal(size)
    z_ai = rng.standard_normal(size)
    z_ind = rng.standard_normal(size)
    z_ai_dir = rng.standard_normal(size)
    z_dm_dir = rng.standard_normal(size)
    z_comb = rng.standard_normal(size)
    u_disc = rng.random(size)

    gt = u_gt < c.prior
    sign = np.where(gt, 1.0, -1.0)
    bss = clip01(0.5 + sign * (c.obviousness / 2.0) + c.base_std * z_bss)
    ai_perc = clip01(bss + c.ai_std * z_ai)
    z_dm = c.rho * z_ai + c.ind_scale * z_ind
    dm_perc = clip01(bss + c.dm_std * z_dm)
    ai_fs = clip01(ai_perc + sign * (c.ai_dir_mu + c.ai_dir_sd * z_ai_dir))
    dm_fs = clip01(dm_perc + sign * (c.dm_dir_mu + c.dm_dir_sd * z_dm_dir))

    ai_dec = ai_fs >= 0.5
    unaided = dm_fs >= 0.5

    pattern = c.pattern
    if pattern is UsePattern.UP1:
        aided = ai_dec
        branch = np.zeros(size, dtype=np.int64)  # auto_accept
    elif pattern is UsePattern.UP5:
        dm_confident = (dm_fs >= c.dm_pos) | (dm_fs <= c.dm_neg)
        comb = clip01(0.5 * ai_fs + 0.5 * dm_fs)
        shifted = clip01(comb + sign * (c.disc_mu + c.disc_sd * z_comb))
        aided = np.where(dm_confident, unaided, shifted >= 0.5)
        branch = np.where(
            dm_confident, _BRANCH_INDEX[Branch.DM_SOLO], _BRANCH_INDEX[Branch.DM_SOLO_THEN_AI]
        ).astype(np.int64)
    else:
        ai_confident = (ai_fs >= c.ai_pos) | (ai_fs <= c.ai_neg)
        if pattern is UsePattern.UP2:
            fallback = unaided
            fallback_branch = _BRANCH_INDEX[Branch.DM_SOLO]
        elif pattern is UsePattern.UP3:
            comb = clip01(c.anchor_w * ai_fs + (1.0 - c.anchor_w) * dm_fs)
            boosted = clip01(comb + sign * (c.boost_mu + c.boost_sd * z_comb))
            fallback = boosted >= 0.5
            fallback_branch = _BRANCH_INDEX[Branch.DM_REVIEW_AI]
        elif pattern is UsePattern.UP4:
            comb = clip01(0.5 * ai_fs + 0.5 * dm_fs)
            shifted = clip01(comb + sign * (c.disc_mu + c.disc_sd * z_comb))
            fallback = shifted >= 0.5
            fallback_branch = _BRANCH_INDEX[Branch.DM_REVIEW_AI]
        else:
            raise InvalidScenarioError(f"unsupported use pattern {pattern!r}")
        aided = np.where(ai_confident, ai_dec, fallback)
        branch = np.where(ai_confident, 0, fallback_branch).astype(np.int64)

    cell = (
        4 * (~gt).astype(np.int64)
        + 2 * (~aided).astype(np.int64)
        + (~unaided).astype(np.int64)
    )
    joint = np.bincount(
        branch * len(CELL_ORDER) + cell, minlength=len(BRANCH_ORDER) * len(CELL_ORDER)
    ).reshape(len(BRANCH_ORDER), len(CELL_ORDER))

    counterfactual = aided != unaided
    discovered = counterfactual & (u_disc < c.discovery_by_cell[cell])
    discovered_counts = np.bincount(cell[discovered], minlength=len(CELL_ORDER))

    trace = None
    if keep_trace:
        trace = {
            "case_index": start + np.arange(size, dtype=np.int64),
            "gt": gt,
            "base_strength": bss,
            "ai_strength": ai_fs,
            "dm_strength": dm_fs,
            "ai_verdict": ai_dec,
            "unaided_verdict": unaided,
            "aided_verdict": aided,
            "branch": branch,
            "cell": cell,
            "discovered": discovered,
            "workload": c.workload_by_branch[branch],
        }
    return _BlockOut(joint=joint.astype(np.int64), discovered=discovered_counts.astype(np.int64), trace=trace)


def _tf(flag: bool) -> str:
    return "T" if flag else "F"


def _episodes_from_trace(trace: dict, limit: int) -> list[Episode]:
    k = min(limit, len(trace["gt"]))
    out = []
    for i in range(k):
        out.append(
            Episode(
                case_index=int(trace["case_index"][i]),
                gt=_tf(bool(trace["gt"][i])),
                base_strength=float(trace["base_strength"][i]),
                ai_strength=float(trace["ai_strength"][i]),
                dm_strength=float(trace["dm_strength"][i]),
                ai_verdict=_tf(bool(trace["ai_verdict"][i])),
                unaided_verdict=_tf(bool(trace["unaided_verdict"][i])),
                aided_verdict=_tf(bool(trace["aided_verdict"][i])),
                branch=BRANCH_ORDER[int(trace["branch"][i])],
                cell=CELL_ORDER[int(trace["cell"][i])],
                discovered=bool(trace["discovered"][i]),
                workload=float(trace["workload"][i]),
            )
        )
    return out


def _report_from_joint(joint: np.ndarray, utilities: UtilityModel) -> tuple[EUReport, CounterfactualMatrix, int]:
    """Counts to report. Shared by the engine and the episode aggregator so
    the two paths agree bit for bit. Returns (report, matrix, n).

    Outcome and baseline terms reuse the closed-form calculus on the
    estimated matrix; only the counterfactual term needs the (branch, cell)
    split, because the auto-accept branch charges the automated table.
    """
    n = int(joint.sum())
    if n <= 0:
        raise EmptyEpisodeSetError("no episodes to aggregate")
    matrix = matrix_from_counts(joint.sum(axis=0).tolist())
    _, _, _, counter_table = _utility_tables(utilities)
    c_eu = math.fsum(
        (joint[b, c] * counter_table[b, c] for b in range(joint.shape[0]) for c in range(joint.shape[1]))
    ) / n

    aided_cm, unaided_cm = core.partition(matrix)
    o_eu = core.outcome_eu(matrix, utilities)
    base_eu = core.unaided_eu(matrix, utilities)
    u_eu = o_eu + c_eu

    def rate(num: float, den: float) -> float | None:
        return num / den if den != 0.0 else None

    report = EUReport(
        outcome_eu=o_eu,
        counter_eu=c_eu,
        usage_eu=u_eu,
        unaided_eu=base_eu,
        relative_outcome_eu=o_eu - base_eu,
        relative_counter_eu=c_eu,
        relative_usage_eu=u_eu - base_eu,
        aided=aided_cm,
        unaided=unaided_cm,
        sensitivity_aided=rate(aided_cm.TP, aided_cm.TP + aided_cm.FN),
        specificity_aided=rate(aided_cm.TN, aided_cm.FP + aided_cm.TN),
        sensitivity_unaided=rate(unaided_cm.TP, unaided_cm.TP + unaided_cm.FN),
        specificity_unaided=rate(unaided_cm.TN, unaided_cm.FP + unaided_cm.TN),
    )
    return report, matrix, n


def _check_run_args(n_cases: int, seed: int, workers: int) -> None:
    if not isinstance(n_cases, int) or n_cases < 1:
        raise InvalidScenarioError(f"n_cases must be a positive integer, got {n_cases!r}")
    if not isinstance(seed, int) or not (0 <= seed < 2**64):
        raise InvalidScenarioError(f"seed must be an integer in [0, 2**64), got {seed!r}")
    if workers < 1:
        raise InvalidScenarioError(f"workers must be >= 1, got {workers!r}")


def run_scenario(
    scenario: Scenario,
    n_cases: int,
    seed: int = 0,
    *,
    workers: int = 1,
    sample_limit: int = 0,
) -> ScenarioResult:
    """Simulate n_cases episodes and aggregate them.

    Deterministic in (scenario, n_cases, seed); worker count only changes
    wall time. sample_limit > 0 additionally returns the first episodes in
    case order.
    """
    _check_run_args(n_cases, seed, workers)
    if sample_limit < 0:
        raise InvalidScenarioError("sample_limit must be >= 0")
    comp = _compile(scenario)

    starts = list(range(0, n_cases, BLOCK))
    def job(start: int) -> _BlockOut:
        size = min(BLOCK, n_cases - start)
        rng = _block_rng(seed, start // BLOCK)
        return _simulate_block(comp, start, size, rng, keep_trace=start < sample_limit)

    if workers == 1 or len(starts) == 1:
        outs = [job(s) for s in starts]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outs = list(pool.map(job, starts))

    joint = np.zeros((len(BRANCH_ORDER), len(CELL_ORDER)), dtype=np.int64)
    discovered = np.zeros(len(CELL_ORDER), dtype=np.int64)
    episodes: list[Episode] = []
    for out in outs:
        joint += out.joint
        discovered += out.discovered
        if out.trace is not None and len(episodes) < sample_limit:
            episodes.extend(_episodes_from_trace(out.trace, sample_limit - len(episodes)))

    report, matrix, n = _report_from_joint(joint, scenario.utilities)
    branch_counts = joint.sum(axis=1)
    mean_workload = float(branch_counts.astype(np.float64) @ comp.workload_by_branch) / n_cases

    return ScenarioResult(
        scenario=scenario,
        n_cases=n_cases,
        seed=seed,
        cell_counts={c.value: int(joint.sum(axis=0)[i]) for i, c in enumerate(CELL_ORDER)},
        branch_counts={b.value: int(branch_counts[i]) for i, b in enumerate(BRANCH_ORDER)},
        joint_counts={
            b.value: {c.value: int(joint[bi, ci]) for ci, c in enumerate(CELL_ORDER)}
            for bi, b in enumerate(BRANCH_ORDER)
        },
        discovered_counts={c.value: int(discovered[i]) for i, c in enumerate(CELL_ORDER)},
        matrix=matrix,
        report=report,
        mean_workload=mean_workload,
        episodes=tuple(episodes),
    )


def simulate_case(scenario: Scenario, rng: np.random.Generator) -> Episode:
    """Simulate a single episode with a caller-supplied generator.

    Consumes exactly eight draws in the engine's fixed order, so successive
    calls on one generator walk the same stream the block engine would.
    """
    comp = _compile(scenario)
    out = _simulate_block(comp, 0, 1, rng, keep_trace=True)
    assert out.trace is not None
    return _episodes_from_trace(out.trace, 1)[0]


def run_use_pattern(
    scenario: Scenario,
    gt,
    ai_strength: float,
    dm_strength: float,
    rng: np.random.Generator,
) -> tuple[bool, Branch]:
    """Wire two final strengths through the scenario's use pattern.

    Returns (aided verdict as bool, branch). Consumes exactly one normal
    draw whether or not the branch uses it, to keep streams aligned.
    """
    from .core import as_bool

    z = float(rng.standard_normal())
    g = as_bool(gt)
    sign = 1.0 if g else -1.0
    comp = _compile(scenario)
    unaided = dm_strength >= 0.5
    ai_dec = ai_strength >= 0.5
    p = scenario.use_pattern
    if p is UsePattern.UP1:
        return ai_dec, Branch.AUTO_ACCEPT
    if p is UsePattern.UP5:
        if dm_strength >= comp.dm_pos or dm_strength <= comp.dm_neg:
            return unaided, Branch.DM_SOLO
        comb = float(clip01(0.5 * ai_strength + 0.5 * dm_strength))
        shifted = float(clip01(comb + sign * (comp.disc_mu + comp.disc_sd * z)))
        return shifted >= 0.5, Branch.DM_SOLO_THEN_AI
    if ai_strength >= comp.ai_pos or ai_strength <= comp.ai_neg:
        return ai_dec, Branch.AUTO_ACCEPT
    if p is UsePattern.UP2:
        return unaided, Branch.DM_SOLO
    if p is UsePattern.UP3:
        comb = float(clip01(comp.anchor_w * ai_strength + (1.0 - comp.anchor_w) * dm_strength))
        boosted = float(clip01(comb + sign * (comp.boost_mu + comp.boost_sd * z)))
        return boosted >= 0.5, Branch.DM_REVIEW_AI
    comb = float(clip01(0.5 * ai_strength + 0.5 * dm_strength))
    shifted = float(clip01(comb + sign * (comp.disc_mu + comp.disc_sd * z)))
    return shifted >= 0.5, Branch.DM_REVIEW_AI


def eu_from_episodes(episodes: Sequence[Episode], utilities: UtilityModel) -> EUReport:
    """Aggregate explicit episodes into the same report run_scenario builds.

    The counterfactual term is charged in expectation (discovery probability
    times counterfactual utility per cell), with the table chosen by each
    episode's branch, so a full episode set reproduces the counts-based
    report exactly.
    """
    if not episodes:
        raise EmptyEpisodeSetError("episode set is empty")
    joint = np.zeros((len(BRANCH_ORDER), len(CELL_ORDER)), dtype=np.int64)
    for ep in episodes:
        joint[_BRANCH_INDEX[ep.branch], _CELL_INDEX[ep.cell]] += 1
    report, _, _ = _report_from_joint(joint, utilities)
    return report


def mean_workload(episodes: Sequence[Episode]) -> float:
    if not episodes:
        raise EmptyEpisodeSetError("episode set is empty")
    return math.fsum(ep.workload for ep in episodes) / len(episodes)


def metric_standard_errors(result: ScenarioResult) -> dict[str, float]:
    """Monte Carlo standard error of each expected-utility metric.

    Every metric is a mean of per-episode values determined by the episode's
    (branch, cell), so the exact sample variance follows from the joint
    counts. Keys match the report fields plus the rel_ aliases used in CSV.
    """
    joint = np.array(
        [
            [result.joint_counts[b.value][c.value] for c in CELL_ORDER]
            for b in BRANCH_ORDER
        ],
        dtype=np.float64,
    )
    n = joint.sum()
    if n <= 0:
        raise EmptyEpisodeSetError("result has no episodes")
    p = joint / n
    o, u, _, k = _utility_tables(result.scenario.utilities)
    o2 = np.broadcast_to(o, joint.shape)
    u2 = np.broadcast_to(u, joint.shape)
    per_episode = {
        "outcome_eu": o2,
        "counter_eu": k,
        "usage_eu": o2 + k,
        "unaided_eu": u2,
        "rel_outcome_eu": o2 - u2,
        "rel_counter_eu": k,
        "rel_usage_eu": o2 + k - u2,
    }
    out = {}
    for name, v in per_episode.items():
        mean = float((p * v).sum())
        var = float((p * v * v).sum()) - mean * mean
        out[name] = math.sqrt(max(0.0, var) / n)
    return out


def _resolve_path(scenario: Scenario, param_path: str) -> list[str]:
    """Normalize and check a dotted sweep path against the scenario."""
    path = param_path
    if path.startswith("scenario."):
        path = path[len("scenario."):]
    if not path:
        raise UnknownParameterError(param_path, "empty path")
    parts = path.split(".")
    node = scenario
    for i, part in enumerate(parts):
        if not isinstance(node, BaseModel) or part not in type(node).model_fields:
            raise UnknownParameterError(param_path, f"no field {'.'.join(parts[: i + 1])!r}")
        node = getattr(node, part)
    if isinstance(node, BaseModel):
        raise UnknownParameterError(param_path, "addresses a group, not a numeric parameter")
    if isinstance(node, (Enum, bool, str)):
        raise UnknownParameterError(param_path, "not a numeric parameter")
    return parts


def _with_value(scenario: Scenario, parts: list[str], value: float) -> Scenario:
    data = scenario.model_dump()
    node = data
    for part in parts[:-1]:
        node = node[part]
    node[parts[-1]] = value
    try:
        return Scenario.model_validate(data)
    except Exception as exc:
        raise InvalidScenarioError(
            f"sweep value {value!r} rejected for {'.'.join(parts)}: {exc}"
        ) from exc


def _per_value_seeds(seed: int, count: int) -> list[int]:
    children = np.random.SeedSequence(seed).spawn(count)
    return [int(ch.generate_state(1, np.uint64)[0]) for ch in children]


def sweep(
    scenario: Scenario,
    param_path: str,
    values: Sequence[float],
    n_cases: int,
    seed: int = 0,
    *,
    workers: int = 1,
    seed_policy: str = "shared",
) -> SweepResult:
    """Run the scenario once per value of one numeric parameter.

    seed_policy "shared" runs every point at the same seed (common random
    numbers, the right default for trend comparisons); "per_value" derives
    an independent seed per point.
    """
    _check_run_args(n_cases, seed, workers)
    if len(values) == 0:
        raise InvalidScenarioError("sweep needs at least one value")
    if len(values) > MAX_SWEEP_VALUES:
        raise TooManyValuesError(
            f"sweep supports at most {MAX_SWEEP_VALUES} values, got {len(values)}"
        )
    if seed_policy not in ("shared", "per_value"):
        raise InvalidScenarioError(f"unknown seed_policy {seed_policy!r}")
    parts = _resolve_path(scenario, param_path)
    seeds = (
        [seed] * len(values)
        if seed_policy == "shared"
        else _per_value_seeds(seed, len(values))
    )
    results = []
    for v, s in zip(values, seeds):
        results.append(run_scenario(_with_value(scenario, parts, float(v)), n_cases, s, workers=workers))
    return SweepResult(
        param_path=".".join(parts),
        values=tuple(float(v) for v in values),
        seed_policy=seed_policy,
        results=tuple(results),
        relative_outcome_eu=tuple(r.report.relative_outcome_eu for r in results),
        relative_counter_eu=tuple(r.report.relative_counter_eu for r in results),
        relative_usage_eu=tuple(r.report.relative_usage_eu for r in results),
    )


def compare_scenarios(
    scenarios: Sequence[Scenario],
    n_cases: int,
    seed: int = 0,
    *,
    workers: int = 1,
) -> tuple[ScenarioResult, ...]:
    """Run up to five scenarios at a shared seed for paired comparison."""
    if len(scenarios) == 0:
        raise InvalidScenarioError("compare needs at least one scenario")
    if len(scenarios) > MAX_COMPARE_SCENARIOS:
        raise TooManyScenariosError(
            f"compare supports at most {MAX_COMPARE_SCENARIOS} scenarios, got {len(scenarios)}"
        )
    return tuple(run_scenario(s, n_cases, seed, workers=workers) for s in scenarios)


def calibrate_thresholds(
    scenario: Scenario,
    target_rate: float,
    n_cases: int = 100_000,
    seed: int = 0,
) -> CalibrationResult:
    """Pick symmetric confident-band thresholds for the AI.

    Simulates AI final strengths under the scenario, then sets the band edge
    at the (1 - target_rate) quantile of |strength - 0.5| so roughly
    target_rate of cases land in the confident band. Reports the rate
    actually achieved on the calibration sample.
    """
    _check_run_args(n_cases, seed, 1)
    if not (0.0 <= target_rate <= 1.0):
        raise InvalidScenarioError(f"target_rate must lie in [0, 1], got {target_rate!r}")
    comp = _compile(scenario)
    rng = _block_rng(seed, _CALIBRATION_BLOCK)
    u_gt = rng.random(n_cases)
    z_bss = rng.standard_normal(n_cases)
    z_ai = rng.standard_normal(n_cases)
    z_dir = rng.standard_normal(n_cases)
    gt = u_gt < comp.prior
    sign = np.where(gt, 1.0, -1.0)
    bss = clip01(0.5 + sign * (comp.obviousness / 2.0) + comp.base_std * z_bss)
    ai_perc = clip01(bss + comp.ai_std * z_ai)
    ai_fs = clip01(ai_perc + sign * (comp.ai_dir_mu + comp.ai_dir_sd * z_dir))
    offset = float(np.quantile(np.abs(ai_fs - 0.5), 1.0 - target_rate))
    pos = 0.5 + offset
    neg = 0.5 - offset
    achieved = float(np.mean((ai_fs >= pos) | (ai_fs <= neg)))
    return CalibrationResult(
        pos_threshold=pos,
        neg_threshold=neg,
        target_rate=target_rate,
        achieved_rate=achieved,
        n_cases=n_cases,
        seed=seed,
    )
