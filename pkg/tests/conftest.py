"""Prints the acceptance-criteria verdict block after the test run."""

import sys


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for index in range(1, 9):
        entry = mod.RESULTS.get(index)
        if entry is None:
            terminalreporter.write_line(
                f"criterion {index}: NOT RUN (crashed or deselected)")
            continue
        name, status, detail = entry
        terminalreporter.write_line(
            f"criterion {index} [{name}]: {status}  ({detail})")
