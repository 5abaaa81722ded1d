import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rggradii import _core, _kernels_py, critical, rgg  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture(params=sorted({_core.BACKEND, "python"}))
def backend(request, monkeypatch):
    """Run a test once per available kernel backend."""
    mod = _kernels_py if request.param == "python" else _core.kernels
    monkeypatch.setattr(rgg, "kernels", mod)
    monkeypatch.setattr(critical, "kernels", mod)
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20261018)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
