import os
import sys

import pytest

ROOT_DIR = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
if ROOT_DIR not in sys.path:
    sys.path.insert(0, ROOT_DIR)

from InfluenceMax.graph import Network, load_edge_list  # noqa: E402


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run acceptance-scale tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: acceptance-scale run, needs --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def path_net():
    """a - b - c with p = 0.5."""
    return load_edge_list(["a b", "b c"], default_p=0.5, name="path")


@pytest.fixture
def triangle_net():
    return load_edge_list(["a b", "b c", "a c"], default_p=0.5, name="triangle")


@pytest.fixture
def star_net():
    """Center 0 with leaves 1..4, p = 0.1."""
    return Network(5, [(0, leaf, 0.1) for leaf in range(1, 5)], uniform_p=0.1, name="star")


@pytest.fixture
def cycle_net():
    return Network(6, [(v, (v + 1) % 6, 0.2) for v in range(6)], uniform_p=0.2, name="cycle")
