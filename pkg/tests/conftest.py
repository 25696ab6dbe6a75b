import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    label = marker.args[0]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        ok = report.outcome == "passed"
        _results[label] = ok and _results.get(label, True)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_results, key=lambda s: (len(s.split()[0]), s)):
        terminalreporter.write_line(f"{'PASS' if _results[label] else 'FAIL'}  {label}")
