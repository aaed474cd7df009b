import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from moufang import malcev as mc  # noqa: E402
from moufang.octonion import OCTONION_LOOP, derive_structure_constants  # noqa: E402
from moufang.sampling import SampleConfig, sample_points, sample_vectors  # noqa: E402


@pytest.fixture(scope="session")
def loop():
    return OCTONION_LOOP


@pytest.fixture(scope="session")
def C():
    return derive_structure_constants()


@pytest.fixture(scope="session")
def table(C):
    return mc.ternary_table(C)


@pytest.fixture(scope="session")
def o2():
    from oracles import o2_chart_product

    return o2_chart_product()


@pytest.fixture(scope="session")
def points():
    return lambda n, stream="g", support=None: sample_points(n, SampleConfig(seed=11), stream, 7, support)


@pytest.fixture(scope="session")
def vectors():
    return lambda n, stream="v", support=None: sample_vectors(n, SampleConfig(seed=11), stream, 7, support)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
