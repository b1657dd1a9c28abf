import pathlib

import os_dulac


def test_version():
    version_file = (
        pathlib.Path(__file__).parents[1].joinpath("src/os_dulac/VERSION").absolute()
    )
    assert os_dulac.__version__ == open(version_file).read().strip()


def test_version_info():
    assert os_dulac.version_info[:2] == tuple(
        int(v) for v in os_dulac.__version__.split(".")[:2]
    )
