import re

_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    key = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[key] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE):
        m = re.match(r"test_criterion_(\d+)_(.*)", key)
        label = f"{int(m.group(1)):2d}  {m.group(2).replace('_', ' ')}" if m else key
        verdict = "PASS" if _ACCEPTANCE[key] == "passed" else "FAIL"
        terminalreporter.write_line(f"[{verdict}] {label}")
