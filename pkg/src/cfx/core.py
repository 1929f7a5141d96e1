"""Closed-form expected-utility calculus over counterfactual outcome matrices.

An assisted binary decision process is summarized by an eight-cell joint
distribution over (ground truth, assisted verdict, unassisted verdict). Four
cells are counterfactual: the assisted verdict differs from what the decision
maker would have done alone. Expected utility splits into an outcome term
(utility of the verdict actually issued) and a counterfactual term (utility
that accrues only when a changed verdict is discovered to have changed the
result), and both compare against the unassisted baseline recoverable from
the same matrix.

Everything here is deterministic arithmetic on probabilities; the Monte Carlo
machinery that estimates these matrices lives in cfx.engine.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Iterable, Literal, Union

from pydantic import BaseModel, ConfigDict, Field

from .errors import DegenerateMarginalError, NegativeEntryError, NonStochasticError

GroundTruth = Literal["T", "F"]
Decision = Literal["T", "F"]
Mode = Literal["automated", "reviewed"]

MATRIX_SUM_TOL = 1e-9


class CellKind(str, Enum):
    """The eight joint outcomes of (ground truth, assisted, unassisted).

    Prefix N marks cells where assistance did not change the verdict, C marks
    counterfactual cells where it did. The suffix names the assisted verdict's
    outcome class (TP/FN for true cases, FP/TN for false ones).
    """

    NTP = "NTP"
    CTP = "CTP"
    CFN = "CFN"
    NFN = "NFN"
    NFP = "NFP"
    CFP = "CFP"
    CTN = "CTN"
    NTN = "NTN"


CELL_ORDER: tuple[CellKind, ...] = (
    CellKind.NTP,
    CellKind.CTP,
    CellKind.CFN,
    CellKind.NFN,
    CellKind.NFP,
    CellKind.CFP,
    CellKind.CTN,
    CellKind.NTN,
)

COUNTERFACTUAL_CELLS: tuple[CellKind, ...] = (
    CellKind.CTP,
    CellKind.CFN,
    CellKind.CFP,
    CellKind.CTN,
)

# (gt, aided, unaided) as booleans, True meaning verdict/state "T"
_CELL_BY_BITS: dict[tuple[bool, bool, bool], CellKind] = {
    (True, True, True): CellKind.NTP,
    (True, True, False): CellKind.CTP,
    (True, False, True): CellKind.CFN,
    (True, False, False): CellKind.NFN,
    (False, True, True): CellKind.NFP,
    (False, True, False): CellKind.CFP,
    (False, False, True): CellKind.CTN,
    (False, False, False): CellKind.NTN,
}

TruthLike = Union[bool, str]


def as_bool(value: TruthLike) -> bool:
    """Normalize a verdict or ground-truth value to a boolean (True is "T")."""
    if isinstance(value, bool):
        return value
    if value == "T":
        return True
    if value == "F":
        return False
    raise ValueError(f"expected 'T', 'F', or bool, got {value!r}")


def classify_cell(gt: TruthLike, aided: TruthLike, unaided: TruthLike) -> CellKind:
    """Map one episode's (ground truth, assisted, unassisted) triple to its cell."""
    return _CELL_BY_BITS[(as_bool(gt), as_bool(aided), as_bool(unaided))]


def is_counterfactual(cell: CellKind) -> bool:
    return cell in COUNTERFACTUAL_CELLS


class CounterfactualMatrix(BaseModel):
    """Joint probability of each of the eight outcome cells.

    Structural only; call validate_matrix for the stochasticity check so that
    deliberately malformed matrices can still be constructed and reported on.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    NTP: float
    CTP: float
    CFN: float
    NFN: float
    NFP: float
    CFP: float
    CTN: float
    NTN: float

    def value(self, cell: CellKind) -> float:
        return getattr(self, cell.value)

    def values(self) -> tuple[float, ...]:
        """Cell probabilities in canonical CELL_ORDER."""
        return tuple(getattr(self, c.value) for c in CELL_ORDER)

    def total(self) -> float:
        return math.fsum(self.values())


def validate_matrix(matrix: CounterfactualMatrix) -> None:
    """Reject negative entries and totals off 1 by more than 1e-9."""
    for cell in CELL_ORDER:
        v = matrix.value(cell)
        if v < 0.0:
            raise NegativeEntryError(cell.value, v)
    total = matrix.total()
    if abs(total - 1.0) > MATRIX_SUM_TOL:
        raise NonStochasticError(total)


class ConfusionMatrix(BaseModel):
    """Joint probabilities of (ground truth, verdict) for one decision process."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    TP: float
    FN: float
    FP: float
    TN: float


def partition(matrix: CounterfactualMatrix) -> tuple[ConfusionMatrix, ConfusionMatrix]:
    """Collapse the eight cells to (assisted, unassisted) confusion matrices.

    The assisted matrix marginalizes out the unassisted verdict and vice
    versa; both preserve the matrix total.
    """
    validate_matrix(matrix)
    aided = ConfusionMatrix(
        TP=matrix.NTP + matrix.CTP,
        FN=matrix.CFN + matrix.NFN,
        FP=matrix.NFP + matrix.CFP,
        TN=matrix.CTN + matrix.NTN,
    )
    unaided = ConfusionMatrix(
        TP=matrix.NTP + matrix.CFN,
        FN=matrix.CTP + matrix.NFN,
        FP=matrix.NFP + matrix.CTN,
        TN=matrix.CFP + matrix.NTN,
    )
    return aided, unaided


def sensitivity(cm: ConfusionMatrix) -> float:
    """P(verdict T | ground truth T). Raises if the true class is empty."""
    denom = cm.TP + cm.FN
    if denom == 0.0:
        raise DegenerateMarginalError("sensitivity undefined: P(ground truth T) is 0")
    return cm.TP / denom

def specificity(cm: ConfusionMatrix) -> float:
    """P(verdict F | ground truth F). Raises if the false class is empty."""
    denom = cm.FP + cm.TN
    if denom == 0.0:
        raise DegenerateMarginalError("specificity undefined: P(ground truth F) is 0")
    return cm.TN / denom


def accuracy(cm: ConfusionMatrix) -> float:
    return cm.TP + cm.TN


class OutcomeUtilities(BaseModel):
    """Utility of each (ground truth, verdict) outcome class."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    TP: float = 2.0
    FN: float = -10.0
    FP: float = -1.0
    TN: float = 1.0

    def value(self, gt: TruthLike, decision: TruthLike) -> float:
        g, d = as_bool(gt), as_bool(decision)
        if g:
            return self.TP if d else self.FN
        return self.FP if d else self.TN


class CounterfactualUtilities(BaseModel):
    """Utility that lands when a changed verdict is discovered, per cell.

    Positive for cells where the change is recognized as a save, negative
    where the change is recognized as a harm someone answers for.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    CTP: float = 5.0
    CFN: float = -30.0
    CFP: float = -2.0
    CTN: float = 5.0

    def value(self, cell: CellKind) -> float:
        if cell not in COUNTERFACTUAL_CELLS:
            raise ValueError(f"{cell.value} is not a counterfactual cell")
        return getattr(self, cell.value)


class DiscoveryProbabilities(BaseModel):
    """Chance that a changed verdict in each cell is ever noticed."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    CTP: float = Field(0.01, ge=0.0, le=1.0)
    CFN: float = Field(0.80, ge=0.0, le=1.0)
    CFP: float = Field(0.10, ge=0.0, le=1.0)
    CTN: float = Field(0.01, ge=0.0, le=1.0)

    def value(self, cell: CellKind) -> float:
        if cell not in COUNTERFACTUAL_CELLS:
            raise ValueError(f"{cell.value} is not a counterfactual cell")
        return getattr(self, cell.value)


class UtilityModel(BaseModel):
    """All utility inputs: outcome utilities, per-mode counterfactual utilities,
    and discovery probabilities.

    Two counterfactual tables exist because discovery consequences can differ
    when a human reviewed the recommendation versus rubber-stamped automation.
    The default uses one table for both.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    outcome: OutcomeUtilities = OutcomeUtilities()
    counterfactual_automated: CounterfactualUtilities = CounterfactualUtilities()
    counterfactual_reviewed: CounterfactualUtilities = CounterfactualUtilities()
    discovery: DiscoveryProbabilities = DiscoveryProbabilities()

    def counterfactual(self, mode: Mode) -> CounterfactualUtilities:
        if mode == "automated":
            return self.counterfactual_automated
        if mode == "reviewed":
            return self.counterfactual_reviewed
        raise ValueError(f"unknown mode {mode!r}")


def outcome_eu(matrix: CounterfactualMatrix, utilities: UtilityModel) -> float:
    """Expected utility of the verdicts actually issued with assistance.

    Folds the eight cells onto the assisted confusion matrix first; the
    per-class sums are exact for typical tabulated inputs.
    """
    aided, _ = partition(matrix)
    u = utilities.outcome
    return math.fsum((aided.TP * u.TP, aided.FN * u.FN, aided.FP * u.FP, aided.TN * u.TN))


def counter_eu(
    matrix: CounterfactualMatrix,
    utilities: UtilityModel,
    mode: Mode = "reviewed",
) -> float:
    """Expected utility from discovered verdict changes.

    Each counterfactual cell contributes probability * discovery chance *
    counterfactual utility; non-counterfactual cells contribute nothing.
    """
    validate_matrix(matrix)
    cu = utilities.counterfactual(mode)
    d = utilities.discovery
    return math.fsum(
        matrix.value(c) * d.value(c) * cu.value(c) for c in COUNTERFACTUAL_CELLS
    )


def usage_eu(
    matrix: CounterfactualMatrix,
    utilities: UtilityModel,
    mode: Mode = "reviewed",
) -> float:
    """Total expected utility of using assistance: outcome plus counterfactual."""
    return outcome_eu(matrix, utilities) + counter_eu(matrix, utilities, mode)


def unaided_eu(matrix: CounterfactualMatrix, utilities: UtilityModel) -> float:
    """Expected utility had every verdict been the unassisted one."""
    _, unaided = partition(matrix)
    u = utilities.outcome
    return math.fsum((unaided.TP * u.TP, unaided.FN * u.FN, unaided.FP * u.FP, unaided.TN * u.TN))


class EUReport(BaseModel):
    """Full expected-utility summary for one outcome matrix.

    Relative values are offsets from the unassisted baseline. The
    counterfactual term's baseline is zero (an unassisted process changes no
    verdicts), so relative_counter_eu equals counter_eu and
    relative_usage_eu = relative_outcome_eu + relative_counter_eu.

    Sensitivity and specificity fields are None when the corresponding
    ground-truth class has zero probability.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    outcome_eu: float
    counter_eu: float
    usage_eu: float
    unaided_eu: float
    relative_outcome_eu: float
    relative_counter_eu: float
    relative_usage_eu: float
    aided: ConfusionMatrix
    unaided: ConfusionMatrix
    sensitivity_aided: float | None
    specificity_aided: float | None
    sensitivity_unaided: float | None
    specificity_unaided: float | None


def _safe_rate(fn, cm: ConfusionMatrix) -> float | None:
    try:
        return fn(cm)
    except DegenerateMarginalError:
        return None


def build_report(
    matrix: CounterfactualMatrix,
    utilities: UtilityModel,
    mode: Mode = "reviewed",
) -> EUReport:
    """Compute every closed-form metric for one matrix and utility model."""
    validate_matrix(matrix)
    aided, unaided = partition(matrix)
    o = outcome_eu(matrix, utilities)
    c = counter_eu(matrix, utilities, mode)
    u = o + c
    base = unaided_eu(matrix, utilities)
    return EUReport(
        outcome_eu=o,
        counter_eu=c,
        usage_eu=u,
        unaided_eu=base,
        relative_outcome_eu=o - base,
        relative_counter_eu=c,
        relative_usage_eu=u - base,
        aided=aided,
        unaided=unaided,
        sensitivity_aided=_safe_rate(sensitivity, aided),
        specificity_aided=_safe_rate(specificity, aided),
        sensitivity_unaided=_safe_rate(sensitivity, unaided),
        specificity_unaided=_safe_rate(specificity, unaided),
    )


class CellDiscovery(BaseModel):
    """One counterfactual cell's discovery economics."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    cell: CellKind
    probability: float
    discovery: float
    utility: float
    contribution: float


class DiscoveryAnalysis(BaseModel):
    """Where the counterfactual term comes from and whether it can only hurt.

    one_sided_negative is True when every counterfactual cell that is both
    reachable (probability > 0) and discoverable (discovery > 0) carries
    negative utility, i.e. discovery exposes the operator to blame with no
    offsetting credit. Vacuously True when nothing is discoverable.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    cells: tuple[CellDiscovery, ...]
    counter_eu: float
    one_sided_negative: bool
    dominant_cell: CellKind | None


def discovery_analysis(
    matrix: CounterfactualMatrix,
    utilities: UtilityModel,
    mode: Mode = "reviewed",
) -> DiscoveryAnalysis:
    validate_matrix(matrix)
    cu = utilities.counterfactual(mode)
    d = utilities.discovery
    rows = []
    for cell in COUNTERFACTUAL_CELLS:
        p = matrix.value(cell)
        dc = d.value(cell)
        uc = cu.value(cell)
        rows.append(
            CellDiscovery(
                cell=cell,
                probability=p,
                discovery=dc,
                utility=uc,
                contribution=p * dc * uc,
            )
        )
    total = math.fsum(r.contribution for r in rows)
    one_sided = all(
        r.utility < 0.0 for r in rows if r.discovery > 0.0 and r.probability > 0.0
    )
    dominant: CellKind | None = None
    best = 0.0
    for r in rows:
        mag = abs(r.contribution)
        if mag > best:
            best = mag
            dominant = r.cell
    return DiscoveryAnalysis(
        cells=tuple(rows),
        counter_eu=total,
        one_sided_negative=one_sided,
        dominant_cell=dominant,
    )


def independent_union_accuracy(a1: float, a2: float) -> float:
    """Accuracy of a team that is right when either independent member is.

    Upper-bound story for combining two judges whose errors are unrelated:
    the team fails only when both fail.
    """
    if not (0.0 <= a1 <= 1.0 and 0.0 <= a2 <= 1.0):
        raise ValueError("accuracies must lie in [0, 1]")
    return 1.0 - (1.0 - a1) * (1.0 - a2)


def matrix_from_counts(counts: Iterable[int] | dict[CellKind, int]) -> CounterfactualMatrix:
    """Turn per-cell episode counts into an estimated outcome matrix.

    Accepts a mapping keyed by cell or a sequence in CELL_ORDER.
    """
    if isinstance(counts, dict):
        seq = [int(counts.get(c, 0)) for c in CELL_ORDER]
    else:
        seq = [int(x) for x in counts]
        if len(seq) != len(CELL_ORDER):
            raise ValueError(f"expected {len(CELL_ORDER)} counts, got {len(seq)}")
    total = sum(seq)
    if total <= 0:
        raise ValueError("counts sum to zero")
    return CounterfactualMatrix(
        **{c.value: seq[i] / total for i, c in enumerate(CELL_ORDER)}
    )
