"""Built-in scenario presets: six workflows over one shared decision setting.

All six share the same world and judges: positives are uncommon, evidence is
moderately informative, and the AI reads it a little more accurately than
the decision maker. The signal and noise defaults are illustrative values
calibrated in this build so the qualitative contrasts between the workflows
are stable at the preset sample sizes; they are not measurements. Each
preset sweeps algorithm complementarity from 0 (the AI errs exactly where
the decision maker errs) to 1 (unrelated errors).

sim1  full automation, every AI verdict issued as-is.
sim2  AI triage: confident AI verdicts auto-accepted, the rest decided by
      the decision maker alone.
sim3  sim2 with the confident-negative band disabled, so only confident
      positives are automated.
sim4  positive-only triage where the decision maker reviews uncertain cases
      with the AI estimate and its explanation (anchored combination).
sim5  sim4 with milder blame for a discovered assisted miss.
sim6  decision-maker-first: they work each case alone first and consult the
      AI only when unsure; utilities as in sim5.
"""

from __future__ import annotations

from .core import CounterfactualUtilities, UtilityModel
from .errors import UnknownPresetError
from .io import RunSpec, ScenarioDocument, SweepSpec
from .scenario import Scenario, UsePattern

_SWEEP = SweepSpec(param_path="algorithm_complementarity", values=(0.0, 0.25, 0.5, 0.75, 1.0))
_RUN = RunSpec(n_cases=500_000, seed=0)

# Milder consequence when a discovered assisted miss is reviewed rather than
# blamed at full force; used by sim5 and sim6.
_LENIENT_CU = CounterfactualUtilities(CTP=5.0, CFN=-15.0, CFP=-2.0, CTN=5.0)
_LENIENT_UTILITIES = UtilityModel(
    counterfactual_automated=_LENIENT_CU,
    counterfactual_reviewed=_LENIENT_CU,
)

_BASE = Scenario()  # package defaults are the shared setting


def _doc(name: str, description: str, scenario: Scenario) -> ScenarioDocument:
    return ScenarioDocument(
        name=name,
        description=description,
        scenario=scenario,
        sweep=_SWEEP,
        run=_RUN,
    )


PRESETS: dict[str, ScenarioDocument] = {
    "sim1": _doc(
        "sim1",
        "Full automation: every AI verdict is issued unreviewed. Outcome EU "
        "barely moves with complementarity, but every disagreement with the "
        "absent human is a potential discovered reversal, so the "
        "counterfactual term sinks as complementarity grows.",
        _BASE.model_copy(update={"use_pattern": UsePattern.UP1}),
    ),
    "sim2": _doc(
        "sim2",
        "AI triage with both confident bands active: confident AI verdicts "
        "are accepted, uncertain cases go to the decision maker alone.",
        _BASE.model_copy(update={"use_pattern": UsePattern.UP2}),
    ),
    "sim3": _doc(
        "sim3",
        "Positive-only triage: the confident-negative band is disabled, so "
        "assisted misses cannot occur and the counterfactual exposure stays "
        "near zero.",
        _BASE.model_copy(update={"use_pattern": UsePattern.UP2, "ai_neg_threshold": -1.0}),
    ),
    "sim4": _doc(
        "sim4",
        "Positive-only triage where uncertain cases are reviewed with the AI "
        "estimate: the decision maker combines the two readings anchored on "
        "the AI, helped toward the truth by the AI's explanation.",
        _BASE.model_copy(update={"use_pattern": UsePattern.UP3, "ai_neg_threshold": -1.0}),
    ),
    "sim5": _doc(
        "sim5",
        "As sim4, but a discovered assisted miss draws half the blame. Same "
        "episodes as sim4 at equal seeds; only the counterfactual pricing "
        "changes.",
        _BASE.model_copy(
            update={
                "use_pattern": UsePattern.UP3,
                "ai_neg_threshold": -1.0,
                "utilities": _LENIENT_UTILITIES,
            }
        ),
    ),
    "sim6": _doc(
        "sim6",
        "Decision-maker-first: they judge each case alone and consult the AI "
        "only when unsure, with the milder blame pricing of sim5.",
        _BASE.model_copy(
            update={
                "use_pattern": UsePattern.UP5,
                "utilities": _LENIENT_UTILITIES,
            }
        ),
    ),
}


def preset_names() -> list[str]:
    return list(PRESETS)


def get_preset(name: str) -> ScenarioDocument:
    try:
        return PRESETS[name]
    except KeyError:
        raise UnknownPresetError(name, preset_names()) from None
