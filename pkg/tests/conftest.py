import re

_ACCEPTANCE: dict[int, str] = {}
_PATTERN = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_")


def pytest_runtest_logreport(report):
    m = _PATTERN.search(report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    if report.failed:
        _ACCEPTANCE[n] = "FAIL"
    elif report.when == "call" and n not in _ACCEPTANCE:
        _ACCEPTANCE[n] = "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"ACCEPTANCE criterion {n}: {_ACCEPTANCE[n]}")
