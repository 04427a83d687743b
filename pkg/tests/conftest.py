from __future__ import annotations

import pytest

_criteria: dict[str, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(key, title): acceptance criterion checked by this test")
    config.addinivalue_line("markers", "slow: takes more than a few seconds")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m:
            key, title = m.args
            _criteria.setdefault(key, {"title": title, "outcomes": []})


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _criteria[m.args[0]]["outcomes"].append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_criteria, key=lambda k: int(k.lstrip("AC"))):
        entry = _criteria[key]
        outs = entry["outcomes"]
        status = "PASS" if outs and all(outs) else ("NOT RUN" if not outs else "FAIL")
        terminalreporter.write_line(f"{key} {status}: {entry['title']}")
