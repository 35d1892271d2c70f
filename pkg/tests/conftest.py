import json
from pathlib import Path

import pytest

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def golden():
    return {p.stem: json.loads(p.read_text()) for p in GOLDEN.glob("*.json")}


def pytest_terminal_summary(terminalreporter):
    from tests.test_acceptance import LINES  # populated only when the suite ran
    if LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(LINES):
            terminalreporter.write_line(LINES[k])
