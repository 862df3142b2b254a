"""Print a one-line verdict per acceptance criterion at the end of the run."""

import re

_AC = re.compile(r"test_acceptance\.py::test_ac(\d+)_(\w+)")
_verdicts = {}


def pytest_runtest_logreport(report):
    m = _AC.search(report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2).replace("_", " "))
    if report.when == "call" or report.outcome != "passed":
        failed = report.outcome != "passed" or _verdicts.get(key) == "FAIL"
        _verdicts[key] = "FAIL" if failed else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for (num, name), verdict in sorted(_verdicts.items()):
        terminalreporter.write_line(f"AC{num:<2} {verdict}  {name}")
