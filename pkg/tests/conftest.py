"""Shared fixtures plus the acceptance summary printed after a test run."""

import re

import pytest

from cfx import CounterfactualMatrix, UtilityModel

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")
_acceptance_outcomes: dict[int, str] = {}


@pytest.fixture
def table2_matrix() -> CounterfactualMatrix:
    """The baseline screening matrix used throughout the unit suite."""
    return CounterfactualMatrix(
        NTP=0.135, CTP=0.025, CFN=0.01, NFN=0.03,
        NFP=0.09, CFP=0.07, CTN=0.09, NTN=0.55,
    )


@pytest.fixture
def default_utilities() -> UtilityModel:
    return UtilityModel()


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if m is None:
        return
    number = int(m.group(1))
    if report.when == "call":
        _acceptance_outcomes[number] = "PASS" if report.passed else "FAIL"
    elif report.when == "setup" and report.failed:
        _acceptance_outcomes[number] = "FAIL"
    elif report.skipped:
        _acceptance_outcomes[number] = "SKIP"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance_outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance_outcomes):
        terminalreporter.write_line(f"criterion {number}: {_acceptance_outcomes[number]}")
