"""Expected-utility analysis of AI-assisted binary decisions.

Closed-form calculus over counterfactual outcome matrices (cfx.core), a
deterministic Monte Carlo engine with pluggable use patterns (cfx.engine),
JSON config and result documents (cfx.io), built-in scenario presets
(cfx.presets), a command-line interface (cfx.cli), and an HTTP service
(cfx.service).
"""

__version__ = "0.1.0"

from .core import (
    CELL_ORDER,
    COUNTERFACTUAL_CELLS,
    CellDiscovery,
    CellKind,
    ConfusionMatrix,
    CounterfactualMatrix,
    CounterfactualUtilities,
    DiscoveryAnalysis,
    DiscoveryProbabilities,
    EUReport,
    OutcomeUtilities,
    UtilityModel,
    build_report,
    classify_cell,
    counter_eu,
    discovery_analysis,
    independent_union_accuracy,
    outcome_eu,
    partition,
    sensitivity,
    specificity,
    unaided_eu,
    usage_eu,
    validate_matrix,
)
from .engine import (
    CalibrationResult,
    Episode,
    ScenarioResult,
    SweepResult,
    calibrate_thresholds,
    compare_scenarios,
    eu_from_episodes,
    run_scenario,
    simulate_case,
    sweep,
)
from .errors import (
    CfxError,
    CfxValidationError,
    ConfigParseError,
    ConfigValidationError,
    DegenerateMarginalError,
    EmptyEpisodeSetError,
    InvalidScenarioError,
    NegativeEntryError,
    NonStochasticError,
    TooManyScenariosError,
    TooManyValuesError,
    UnknownFieldError,
    UnknownParameterError,
    UnknownPresetError,
)
from .io import (
    ResultDocument,
    RunSpec,
    ScenarioDocument,
    SweepSpec,
    dump_document,
    export_schemas,
    load_scenario,
    results_to_csv,
    write_results,
)
from .presets import get_preset, preset_names
from .scenario import Branch, Scenario, UsePattern, Workload, parameter_schema

__all__ = [
    "CELL_ORDER",
    "COUNTERFACTUAL_CELLS",
    "Branch",
    "CalibrationResult",
    "CellDiscovery",
    "CellKind",
    "CfxError",
    "CfxValidationError",
    "ConfigParseError",
    "ConfigValidationError",
    "ConfusionMatrix",
    "CounterfactualMatrix",
    "CounterfactualUtilities",
    "DegenerateMarginalError",
    "DiscoveryAnalysis",
    "DiscoveryProbabilities",
    "EUReport",
    "EmptyEpisodeSetError",
    "Episode",
    "InvalidScenarioError",
    "NegativeEntryError",
    "NonStochasticError",
    "OutcomeUtilities",
    "ResultDocument",
    "RunSpec",
    "Scenario",
    "ScenarioDocument",
    "ScenarioResult",
    "SweepResult",
    "SweepSpec",
    "TooManyScenariosError",
    "TooManyValuesError",
    "UnknownFieldError",
    "UnknownParameterError",
    "UnknownPresetError",
    "UsePattern",
    "UtilityModel",
    "Workload",
    "build_report",
    "calibrate_thresholds",
    "classify_cell",
    "compare_scenarios",
    "counter_eu",
    "discovery_analysis",
    "dump_document",
    "eu_from_episodes",
    "export_schemas",
    "get_preset",
    "independent_union_accuracy",
    "load_scenario",
    "outcome_eu",
    "parameter_schema",
    "partition",
    "preset_names",
    "results_to_csv",
    "run_scenario",
    "sensitivity",
    "simulate_case",
    "specificity",
    "sweep",
    "unaided_eu",
    "usage_eu",
    "validate_matrix",
    "write_results",
]
