"""Per-criterion summary for the acceptance suite.

Tests tagged ``@pytest.mark.criterion(k, "label")`` are grouped by ``k``; the
terminal summary prints one PASS/FAIL line per criterion.
"""

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_outcomes: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, label): acceptance criterion a test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, label = marker.args
    entry = _outcomes.setdefault(number, {"label": label, "ok": True, "ran": False})
    if report.when == "call":
        entry["ran"] = True
    if report.failed or (report.when == "call" and report.skipped):
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        entry = _outcomes[number]
        verdict = "PASS" if entry["ok"] and entry["ran"] else "FAIL"
        terminalreporter.write_line(f"{verdict} criterion {number}: {entry['label']}")
