"""Shared fixtures and the acceptance summary printed at the end of the run."""
import pytest

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or (report.when != "call" and not report.failed):
        return
    number, title = marker.args
    detail = dict(item.user_properties).get("detail", "")
    previous = _CRITERIA.get(number)
    ok = report.passed and (previous is None or previous[1])
    details = [d for d in ((previous[2] if previous else ""), detail) if d]
    _CRITERIA[number] = (title, ok, "; ".join(details))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok, detail = _CRITERIA[number]
        line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}"
        terminalreporter.write_line(line + (f"  [{detail}]" if detail else ""))


@pytest.fixture
def detail(record_property):
    """Attach a one-line measurement to the acceptance summary."""
    def attach(text):
        record_property("detail", text)
    return attach
