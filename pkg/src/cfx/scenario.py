"""Scenario parameters for the Monte Carlo engine.

A Scenario bundles everything the generative model needs: how hard cases are,
how sharp each judge's perception is, how the two judges interact under a
given use pattern, and what outcomes and discovered verdict changes are
worth. Fields carry range and grouping metadata so forms and docs can be
generated from the model itself (see parameter_schema).

Threshold fields accept values outside [0, 1] on purpose: a positive
threshold above 1 can never be reached and a negative threshold below 0 can
never be undercut, so such values act as sentinels that disable the
corresponding confident band.
"""

from __future__ import annotations

from enum import Enum
from typing import Any

import annotated_types
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .core import UtilityModel


class UsePattern(str, Enum):
    """How the decision maker employs the AI recommendation.

    UP1: every AI verdict is accepted outright.
    UP2: confident AI verdicts are accepted, the rest are decided by the
        decision maker alone.
    UP3: confident AI verdicts are accepted; otherwise the decision maker
        weighs the AI estimate against their own (anchored on the AI) and the
        AI's explanation nudges them toward the truth.
    UP4: confident AI verdicts are accepted; otherwise the decision maker
        averages the two estimates evenly and applies their own judgment of
        which direction is right.
    UP5: the decision maker judges first and decides alone when confident;
        only uncertain cases are discussed with the AI.
    """

    UP1 = "UP1"
    UP2 = "UP2"
    UP3 = "UP3"
    UP4 = "UP4"
    UP5 = "UP5"


class Branch(str, Enum):
    """Which path a case took through the use pattern."""

    AUTO_ACCEPT = "auto_accept"
    DM_SOLO = "dm_solo"
    DM_REVIEW_AI = "dm_review_ai"
    DM_SOLO_THEN_AI = "dm_solo_then_ai"


BRANCH_ORDER: tuple[Branch, ...] = (
    Branch.AUTO_ACCEPT,
    Branch.DM_SOLO,
    Branch.DM_REVIEW_AI,
    Branch.DM_SOLO_THEN_AI,
)


class Workload(BaseModel):
    """Relative effort charged per case, by branch. Reported, never folded
    into expected utility."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    auto_accept: float = Field(1.0, ge=0.0, description="Effort when the AI verdict is accepted without review.")
    dm_solo: float = Field(5.0, ge=0.0, description="Effort when the decision maker works the case alone.")
    dm_review_ai: float = Field(7.0, ge=0.0, description="Effort when the decision maker reviews and weighs the AI estimate.")
    dm_solo_then_ai: float = Field(8.0, ge=0.0, description="Effort when the decision maker works the case first and then consults the AI.")

    def value(self, branch: Branch) -> float:
        return getattr(self, branch.value)


def _f(default: float, lo: float | None, hi: float | None, group: str, doc: str) -> Any:
    kwargs: dict[str, Any] = {"description": doc, "json_schema_extra": {"group": group}}
    if lo is not None:
        kwargs["ge"] = lo
    if hi is not None:
        kwargs["le"] = hi
    return Field(default, **kwargs)


class Scenario(BaseModel):
    """Complete parameterization of one simulated decision setting."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    # How the world generates cases
    prior: float = _f(0.25, 0.0, 1.0, "problem_domain",
                      "Probability that a case is truly positive.")
    obviousness: float = _f(0.36, 0.0, 1.0, "problem_domain",
                            "How far a typical case's evidence sits from the decision boundary; 0 is pure noise, 1 is unmistakable.")
    base_strength_std: float = _f(0.18, 0.0, 1.0, "problem_domain",
                                  "Case-to-case spread of evidence strength around the obviousness level.")

    # Judge perception quality
    ai_bss_std: float = _f(0.14, 0.0, 1.0, "judgments",
                           "Noise in the AI's reading of the evidence.")
    dm_bss_std: float = _f(0.15, 0.0, 1.0, "judgments",
                           "Noise in the decision maker's reading of the evidence.")
    ai_directional_strength: float = _f(0.02, 0.0, 1.0, "judgments",
                                        "Mean of the AI's truth-ward correction after reading the evidence; a negative draw pushes away from the truth.")
    ai_directional_std: float = _f(0.02, 0.0, 1.0, "judgments",
                                   "Spread of the AI's truth-ward correction.")
    dm_directional_strength: float = _f(0.02, 0.0, 1.0, "judgments",
                                        "Mean of the decision maker's truth-ward correction.")
    dm_directional_std: float = _f(0.02, 0.0, 1.0, "judgments",
                                   "Spread of the decision maker's truth-ward correction.")
    ai_pos_threshold: float = _f(0.65, -1.0, 2.0, "judgments",
                                 "AI strength at or above which the AI counts as confidently positive; above 1 disables the band.")
    ai_neg_threshold: float = _f(0.35, -1.0, 2.0, "judgments",
                                 "AI strength at or below which the AI counts as confidently negative; below 0 disables the band.")
    dm_pos_threshold: float = _f(0.65, -1.0, 2.0, "judgments",
                                 "Decision-maker strength at or above which they decide alone without consulting the AI; above 1 disables the band.")
    dm_neg_threshold: float = _f(0.35, -1.0, 2.0, "judgments",
                                 "Decision-maker strength at or below which they decide alone; below 0 disables the band.")

    # How the two judges relate and combine
    algorithm_complementarity: float = _f(0.5, 0.0, 1.0, "interaction",
                                          "How unlike the decision maker's perception errors the AI's are; 0 means same noise, 1 means independent noise.")
    use_pattern: UsePattern = Field(UsePattern.UP1,
                                    description="Workflow wiring the AI recommendation into the final verdict.",
                                    json_schema_extra={"group": "interaction"})
    anchor_weight: float = _f(0.65, 0.0, 1.0, "interaction",
                              "Weight on the AI estimate when the decision maker combines the two while anchored on the AI.")
    explanatory_boost_strength: float = _f(0.05, 0.0, 1.0, "interaction",
                                           "Mean truth-ward shift from reading the AI's explanation during review.")
    explanatory_boost_std: float = _f(0.05, 0.0, 1.0, "interaction",
                                      "Spread of the explanation-driven shift.")
    directional_discrimination_strength: float = _f(0.04, 0.0, 1.0, "interaction",
                                                    "Mean truth-ward shift from the decision maker judging which of the two estimates to trust.")
    directional_discrimination_std: float = _f(0.04, 0.0, 1.0, "interaction",
                                               "Spread of the trust-judgment shift.")

    # What outcomes and discoveries are worth
    utilities: UtilityModel = Field(default_factory=UtilityModel,
                                    description="Outcome utilities, counterfactual utilities per review mode, and discovery probabilities.",
                                    json_schema_extra={"group": "utilities_discovery"})

    # What each branch costs
    workload: Workload = Field(default_factory=Workload,
                               description="Relative per-case effort by branch.",
                               json_schema_extra={"group": "workload"})

    @model_validator(mode="after")
    def _thresholds_ordered(self) -> "Scenario":
        if self.ai_neg_threshold > self.ai_pos_threshold:
            raise ValueError("ai_neg_threshold must not exceed ai_pos_threshold")
        if self.dm_neg_threshold > self.dm_pos_threshold:
            raise ValueError("dm_neg_threshold must not exceed dm_pos_threshold")
        return self


def _bounds(field: Any) -> tuple[float | None, float | None]:
    lo = hi = None
    for m in field.metadata:
        if isinstance(m, annotated_types.Ge):
            lo = float(m.ge)
        elif isinstance(m, annotated_types.Le):
            hi = float(m.le)
    return lo, hi


def parameter_schema() -> list[dict[str, Any]]:
    """Flat description of every scenario parameter for form generation.

    Each entry has: path (dotted, addressable by sweeps), group, kind
    ("float" or "choice"), minimum/maximum or choices, default, and doc.
    Submodel leaves inherit the group of their top-level field.
    """
    defaults = Scenario()
    entries: list[dict[str, Any]] = []

    def walk(model: BaseModel, prefix: str, group: str | None) -> None:
        for name, field in type(model).model_fields.items():
            path = f"{prefix}{name}"
            extra = field.json_schema_extra
            g = (extra or {}).get("group", group) if isinstance(extra, dict) else group
            value = getattr(model, name)
            if isinstance(value, BaseModel):
                walk(value, f"{path}.", g)
                continue
            if isinstance(value, UsePattern):
                entries.append({
                    "path": path,
                    "group": g,
                    "kind": "choice",
                    "choices": [p.value for p in UsePattern],
                    "default": value.value,
                    "doc": field.description or "",
                })
                continue
            lo, hi = _bounds(field)
            entries.append({
                "path": path,
                "group": g,
                "kind": "float",
                "minimum": lo,
                "maximum": hi,
                "default": float(value),
                "doc": field.description or "",
            })

    walk(defaults, "", None)
    return entries


PARAMETER_GROUPS: tuple[str, ...] = (
    "problem_domain",
    "judgments",
    "interaction",
    "utilities_discovery",
    "workload",
)
