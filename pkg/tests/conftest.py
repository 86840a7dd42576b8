import pytest

_acceptance = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion")


@pytest.hookimpl(tryfirst=True)
def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m:
            item.user_properties.append(("criterion", f"criterion {m.args[0]}: {m.args[1]}"))


def pytest_runtest_logreport(report):
    label = dict(report.user_properties).get("criterion")
    if label is None:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _acceptance.append((label, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome in _acceptance:
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] {label}")
