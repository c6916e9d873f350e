import re

import pytest

from golden import INTRO, TOY
from parkgame import project_to_gates, single_gate_scenario


@pytest.fixture
def toy():
    return single_gate_scenario(**TOY)


@pytest.fixture
def toy_projected(toy):
    return project_to_gates(toy)


@pytest.fixture
def intro():
    return single_gate_scenario(**INTRO)


@pytest.fixture
def intro_projected(intro):
    return project_to_gates(intro)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            if getattr(report, "when", "call") != "call" and outcome != "error":
                continue
            match = re.search(r"test_acceptance\.py::test_ac(\d+)_(\w+)", report.nodeid)
            if match:
                verdict = "PASS" if outcome == "passed" else "FAIL"
                lines.append((int(match.group(1)), f"AC{match.group(1)} {verdict}  {match.group(2)}"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
