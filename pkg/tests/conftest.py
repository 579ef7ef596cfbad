"""Surfaces the acceptance verdict lines after the run.

Output capture would otherwise swallow them; the terminal summary hook
writes to the real terminal whatever capture mode is active.
"""

import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "ACCEPTANCE_LINES", None)
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in lines:
        terminalreporter.write_line(line)
