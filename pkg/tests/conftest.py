from __future__ import annotations

from pathlib import Path

import pytest

from acmeslice import parse
from acmeslice.fixtures import las_source

TESTS = Path(__file__).parent
FIXTURES = TESTS / "fixtures"
GOLDEN = TESTS / "golden"

LAS_CRITERION = ("resource_mgr", ["incident_info_request", "receive_incident_info"])

_acceptance: dict[str, tuple[str, str]] = {}


@pytest.fixture(scope="session")
def las():
    return parse(las_source())


@pytest.fixture(scope="session")
def las_text():
    return las_source()


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): an exit criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or report.failed:
        prior = _acceptance.get(number, (title, "PASS"))[1]
        status = "PASS" if report.passed and prior == "PASS" else "FAIL"
        _acceptance[number] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance, key=int):
        title, status = _acceptance[number]
        terminalreporter.write_line(f"[{status}] AC{number}: {title}")
