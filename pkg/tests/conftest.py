"""Shared test configuration.

Tests marked ``@pytest.mark.acceptance(n, "name")`` feed a summary block
printed after the run, one line per numbered check:

    ACCEPTANCE <n> <name>: PASS|FAIL

A number may be claimed by several tests; the line reports PASS only when
every one of them passed.  Strict expected failures count as FAIL: the
check is implemented faithfully and genuinely does not hold.
"""

from __future__ import annotations

import pytest

_DECLARED: dict[str, tuple[int, str]] = {}
_RESULTS: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "acceptance(number, name): tie a test to a numbered acceptance check",
    )


def pytest_collection_modifyitems(items):
    for item in items:
        marker = item.get_closest_marker("acceptance")
        if marker is not None:
            _DECLARED[item.nodeid] = (int(marker.args[0]), str(marker.args[1]))


def pytest_runtest_logreport(report):
    declared = _DECLARED.get(report.nodeid)
    if declared is None:
        return
    number, name = declared
    entry = _RESULTS.setdefault(number, {"name": name, "ok": True})
    if report.when == "call":
        if hasattr(report, "wasxfail"):
            # An expected failure still means the check does not hold.
            entry["ok"] = False
        elif not report.passed:
            entry["ok"] = False
    elif report.when in ("setup", "teardown") and report.failed:
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_RESULTS):
        entry = _RESULTS[number]
        outcome = "PASS" if entry["ok"] else "FAIL"
        terminalreporter.write_line(f"ACCEPTANCE {number} {entry['name']}: {outcome}")
