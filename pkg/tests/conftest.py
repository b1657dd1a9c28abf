import pathlib

import pytest

from os_dulac.options import read_system

DATA = pathlib.Path(__file__).parent.joinpath("data")


@pytest.fixture
def data_path():
    return lambda name: str(DATA.joinpath(name))


@pytest.fixture
def vdp():
    return read_system(DATA.joinpath("vdp.vf"))


@pytest.fixture
def node():
    return read_system(DATA.joinpath("node.vf"))


@pytest.fixture
def rotation():
    return read_system(DATA.joinpath("rotation.vf"))


@pytest.fixture
def saddle():
    return read_system(DATA.joinpath("saddle.vf"))


@pytest.fixture
def circle():
    return read_system(DATA.joinpath("circle.vf"))
