import pytest

ACCEPTANCE_MODULE = "test_acceptance.py"


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, label): acceptance criterion covered by a test")
    config._criterion_outcomes = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, label = marker.args
    outcomes = item.config._criterion_outcomes
    failed = call.excinfo is not None and not call.excinfo.errisinstance(pytest.skip.Exception)
    previous = outcomes.get(number, (label, True))[1]
    if call.when == "call" or failed:
        outcomes[number] = (label, previous and not failed)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    outcomes = config._criterion_outcomes
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(outcomes):
        label, ok = outcomes[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {label}")
