import re

# test_acceptance.py names each test test_criterion_NN_<slug>; collect their outcomes
_CRITERIA = {}
_PATTERN = re.compile(r"test_criterion_(\d+)_(\w+)")


def pytest_runtest_logreport(report):
    m = _PATTERN.search(report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2))
    if report.when == "call" or report.outcome != "passed":
        prev = _CRITERIA.get(key)
        if prev != "FAIL":
            _CRITERIA[key] = "PASS" if report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (num, slug), status in sorted(_CRITERIA.items()):
        terminalreporter.write_line(f"criterion {num:2d} {slug.replace('_', ' '):40s} {status}")

