import pytest

from gisemi.core import validate
from gisemi.presheaf import validate_presheaf
from gisemi.workbench.io import read_presheaf, read_semigroup
from gisemi.workbench.suites import fixture_path


def load(name):
    return read_semigroup(fixture_path(f"{name}.sgp"))


@pytest.fixture
def rz2():
    return load("rz2")


@pytest.fixture
def lz2():
    return load("lz2")


@pytest.fixture
def sl2():
    return load("sl2")


@pytest.fixture
def y3():
    return load("y3")


@pytest.fixture
def i2():
    return load("i2")


@pytest.fixture
def z2():
    return validate([[0, 1], [1, 0]])


@pytest.fixture
def trivial():
    return validate([[0]])


@pytest.fixture
def p3():
    return read_presheaf(fixture_path("p3.json"))


@pytest.fixture
def sl2_points():
    """One point over each element of SL2."""
    return validate_presheaf([[0, 0], [0, 1]], [[0], [1]], {(1, 0): [0]})


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    verdicts = getattr(mod, "VERDICTS", None)
    if verdicts:
        terminalreporter.section("acceptance criteria")
        for n in sorted(verdicts):
            terminalreporter.write_line(verdicts[n])
