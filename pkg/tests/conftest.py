"""Prints one PASS/FAIL line per acceptance criterion after the run.

The tests in test_acceptance.py encode the shipping gate; their names carry
a criterion tag (test_criterion_03a_...) that is parsed here so the summary
reads as a checklist without scrolling through pytest output.
"""

import re

_results = {}

_NAME = re.compile(r"test_criterion_(\d+[a-z]?)_(\w+)")


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    m = _NAME.match(report.nodeid.split("::")[-1])
    if m:
        _results[m.group(1)] = (m.group(2).replace("_", " "), report.passed)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for tag in sorted(_results):
        label, ok = _results[tag]
        terminalreporter.write_line(
            f"ACCEPTANCE {tag} {label}: {'PASS' if ok else 'FAIL'}")
