import os
import sys

sys.path.insert(0, os.path.dirname(__file__))


def pytest_terminal_summary(terminalreporter):
    """Replay the acceptance verdict lines after the run; capture settings
    swallow them when they are printed from inside the tests."""
    lines = sys.modules.get("test_acceptance") and sys.modules["test_acceptance"].VERDICT_LINES
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
