"""Acceptance bookkeeping: one PASS/FAIL line per criterion at the end of the run."""

from __future__ import annotations

import pytest

_results: dict[str, tuple[str, str, float]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(ident, title): an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call":
        return
    ident, title = mark.args
    _results[ident] = ("PASS" if rep.passed else "FAIL", title, rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for ident in sorted(_results, key=lambda s: int(s[2:])):
        status, title, secs = _results[ident]
        terminalreporter.write_line(f"{ident} {status} ({secs:.2f}s) {title}")
