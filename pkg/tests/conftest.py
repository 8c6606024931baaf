import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

from chordstrata.atlas import enumerate_all  # noqa: E402
from chordstrata.nerve import build_nerve  # noqa: E402

settings.register_profile("repro", derandomize=True, deadline=None)
settings.load_profile("repro")

_ATLAS = {}


def atlas_for(d):
    if d not in _ATLAS:
        _ATLAS[d] = enumerate_all(d)
    return _ATLAS[d]


@pytest.fixture(scope="session")
def atlas2():
    return atlas_for(2)


@pytest.fixture(scope="session")
def atlas3():
    return atlas_for(3)


@pytest.fixture(scope="session")
def atlas4():
    return atlas_for(4)


@pytest.fixture(scope="session")
def nerve3(atlas3):
    return build_nerve(3, atlas3)


@pytest.fixture(scope="session")
def nerve4(atlas4):
    return build_nerve(4, atlas4)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        ok, detail = mod.RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
