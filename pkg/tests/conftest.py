import re
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

GOLDEN_DIR = Path(__file__).parent / "golden"


@pytest.fixture
def golden_dir():
    return GOLDEN_DIR


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    # C1, C2, ..., C10 in numeric order
    for line in sorted(mod.RESULTS, key=lambda line: int(re.match(r"\[\w+\] C(\d+)", line).group(1))):
        terminalreporter.write_line(line)
