import os
import sys

from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

# searches are exact, so single examples can take a while; determinism matters more
settings.register_profile("splitkit", deadline=None, derandomize=True)
settings.load_profile("splitkit")

_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    from test_acceptance import LABELS

    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE:
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {LABELS.get(name, name)}")
