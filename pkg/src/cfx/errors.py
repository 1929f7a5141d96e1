"""Exception types shared across the package.

Validation errors (bad inputs, malformed documents, out-of-range requests)
derive from CfxValidationError so callers can map the whole family to a
single exit code or HTTP status. Everything else that the package raises
deliberately derives from CfxError.
"""

from __future__ import annotations


class CfxError(Exception):
    """Base class for errors raised by this package."""


class CfxValidationError(CfxError):
    """Input failed validation; the request can be fixed and retried."""


class NegativeEntryError(CfxValidationError):
    """An outcome matrix holds a negative probability."""

    def __init__(self, cell: str, value: float):
        self.cell = cell
        self.value = value
        super().__init__(f"matrix entry {cell} is negative: {value!r}")


class NonStochasticError(CfxValidationError):
    """Outcome matrix entries do not sum to 1 within tolerance."""

    def __init__(self, total: float):
        self.total = total
        super().__init__(f"matrix entries sum to {total!r}, expected 1 within 1e-9")


class DegenerateMarginalError(CfxValidationError):
    """Sensitivity or specificity requested for an empty class marginal."""


class EmptyEpisodeSetError(CfxValidationError):
    """An episode aggregate was requested over zero episodes."""


class InvalidScenarioError(CfxValidationError):
    """A scenario or run request is out of range."""


class UnknownParameterError(CfxValidationError):
    """A sweep path does not address a numeric scenario parameter."""

    def __init__(self, param_path: str, reason: str = "not a numeric scenario parameter"):
        self.param_path = param_path
        super().__init__(f"unknown sweep parameter {param_path!r}: {reason}")


class TooManyValuesError(CfxValidationError):
    """A sweep asked for more grid points than the supported maximum."""


class TooManyScenariosError(CfxValidationError):
    """A comparison asked for more scenarios than the supported maximum."""


class UnknownPresetError(CfxValidationError):
    """No built-in scenario with the requested name."""

    def __init__(self, name: str, known: list[str]):
        self.name = name
        super().__init__(f"unknown preset {name!r}; available: {', '.join(known)}")


class ConfigParseError(CfxValidationError):
    """Config text is not valid JSON."""

    def __init__(self, location: str, detail: str):
        self.location = location
        super().__init__(f"config is not valid JSON at {location}: {detail}")


class ConfigValidationError(CfxValidationError):
    """Config parsed but one or more fields are invalid or missing."""

    def __init__(self, field_path: str, reason: str):
        self.field_path = field_path
        super().__init__(f"{field_path}: {reason}")


class UnknownFieldError(ConfigValidationError):
    """Config carries a field the schema does not define."""

    def __init__(self, field_path: str):
        super().__init__(field_path, "unknown field")
