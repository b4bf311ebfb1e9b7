import pytest

from hdakit import fixtures as fx
from hdakit.hda import Hda
from hdakit.precubical import PrecubicalSet


@pytest.fixture
def fig1():
    return fx.fig1()


@pytest.fixture
def ex29():
    return fx.ex29()


def circle_set() -> PrecubicalSet:
    """One vertex and one loop edge."""
    return PrecubicalSet({"v": 0, "e": 1}, {"e": [("v", "v")]})


def circle_hda() -> Hda:
    return Hda(circle_set(), ("a",), {"v"}, {"v"}, {"e": ("a",)}, "circle")


@pytest.fixture
def circle():
    return circle_hda()


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[n])
