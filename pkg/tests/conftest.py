import sys
from pathlib import Path

import pytest

from enstrophy_bounds import load_params_file

ROOT = Path(__file__).resolve().parent.parent
PRESETS = ROOT / "presets"


@pytest.fixture(scope="session")
def fig2():
    return load_params_file(str(PRESETS / "fig2.json"))


@pytest.fixture(scope="session")
def fig3():
    return load_params_file(str(PRESETS / "fig3.json"))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # acceptance verdicts collect during the run; print them here so
    # output capture cannot swallow the passing ones
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "_VERDICTS", None) if mod else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.line(line)
