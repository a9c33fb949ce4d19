import pytest

from bbktesting import Config as CONFIG
from bbktesting.BBKUtils import BBKUtils
from bbktesting.Descriptors import load_registered
from bbktesting.IntervalModel import CellMesh


@pytest.fixture(scope="session")
def toplmech():
    return load_registered("toplmech")


@pytest.fixture(scope="session")
def bf_abelian():
    return load_registered("bf1d-abelian")


@pytest.fixture(scope="session")
def bf_sl2():
    return load_registered("bf1d-sl2")


@pytest.fixture(scope="session")
def factorization_mesh():
    return CellMesh(BBKUtils.mesh_breakpoints(CONFIG.FACTORIZATION_MESH_BREAKPOINTS))


@pytest.fixture
def config(monkeypatch):
    """Config module whose changes are undone after the test"""
    for name in dir(CONFIG):
        if name.isupper():
            monkeypatch.setattr(CONFIG, name, getattr(CONFIG, name))
    return CONFIG
