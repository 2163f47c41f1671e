"""Collects acceptance criteria outcomes and prints one line per criterion."""

import pytest

_RESULTS: dict = {}


def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    if report.when == "call" or report.outcome != "passed":
        _RESULTS.setdefault(marker, "PASS")
        if report.outcome != "passed":
            _RESULTS[marker] = "FAIL"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        rep.criterion = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for (num, title), status in sorted(_RESULTS.items()):
        terminalreporter.write_line(f"criterion {num:>2}  {status}  {title}")
