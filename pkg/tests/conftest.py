import re

_criteria: dict[int, tuple[str, str]] = {}
_NAME = re.compile(r"test_criterion_(\d+)_(\w+)")


def pytest_runtest_logreport(report):
    m = _NAME.search(report.nodeid)
    if not m or (report.passed and report.when != "call"):
        return
    n = int(m.group(1))
    if _criteria.get(n, ("",))[0] != "FAIL":
        _criteria[n] = ("PASS" if report.passed else "FAIL", m.group(2).replace("_", " "))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        status, name = _criteria[n]
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {name}")
