import numpy as np
import pytest

from gerstewitz.corpus import seed_from_env


@pytest.fixture
def rng(request):
    # one stream per test so reordering or -k selection cannot change draws
    offset = sum(map(ord, request.node.name))
    return np.random.default_rng(seed_from_env() + offset)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
