"""Collects acceptance-criterion outcomes and prints one PASS/FAIL line for each."""
import pytest

_OUTCOMES = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker('criterion')
    if marker is None:
        return
    number, title = marker.args
    if report.when == 'call' or (report.when == 'setup' and not report.passed):
        _OUTCOMES[number] = (title, report.passed, report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section('acceptance criteria')
    for number in sorted(_OUTCOMES):
        title, passed, duration = _OUTCOMES[number]
        status = 'PASS' if passed else 'FAIL'
        terminalreporter.write_line(f'criterion {number}: {status}  {title}  ({duration:.2f}s)')
