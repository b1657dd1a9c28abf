import pytest
from pydantic import ValidationError

from os_dulac.config import KitConfig, LogLevel
from os_dulac.exceptions import InvalidToleranceError
from os_dulac.options import load_config
from os_dulac.utils import update_from_pyfile, walk_modules


def test_defaults():
    config = KitConfig()
    assert config.LOG_LEVEL is LogLevel.warning
    assert config.DEPTH == 12
    assert config.TOL == 1e-10
    assert config.GRID_N == 32
    assert config.MIN_RADIUS == 1e-3
    assert config.SAMPLE_BOX == "-2:2,-2:2"


def test_env(monkeypatch):
    monkeypatch.setenv("OS_DULAC_DEPTH", "5")
    monkeypatch.setenv("OS_DULAC_LOG_LEVEL", "debug")
    config = KitConfig()
    assert config.DEPTH == 5
    assert config.LOG_LEVEL is LogLevel.debug


def test_validation():
    with pytest.raises(ValidationError):
        KitConfig(TILES=0)
    with pytest.raises(ValidationError):
        KitConfig(SAMPLE_BOX="1:0,0:1")
    assert KitConfig(DEPTH=0).DEPTH == 0
    assert KitConfig(WORKERS=0).WORKERS == 1


def test_update_from_pyfile(tmp_path):
    pyfile = tmp_path.joinpath("config.py")
    pyfile.write_text("DEPTH = 3\nTILES = 4\n_PRIVATE = 1\nlower = 2\n")
    config = update_from_pyfile(KitConfig(), str(pyfile))
    assert config.DEPTH == 3
    assert config.TILES == 4
    assert not hasattr(config, "lower")


def test_precedence(tmp_path, monkeypatch):
    monkeypatch.setenv("OS_DULAC_DEPTH", "5")
    monkeypatch.setenv("OS_DULAC_TILES", "7")
    pyfile = tmp_path.joinpath("config.py")
    pyfile.write_text("DEPTH = 3\n")
    config = load_config(str(pyfile), DEPTH=2, TOL=None)
    assert config.DEPTH == 2
    assert config.TILES == 7
    assert load_config(str(pyfile)).DEPTH == 3
    assert load_config().DEPTH == 5


def test_debug_forces_debug_level():
    config = load_config(DEBUG=True)
    assert config.LOG_LEVEL is LogLevel.debug


def test_tolerance_range():
    with pytest.raises(InvalidToleranceError):
        load_config(TOL=1e-2)


def test_walk_modules():
    names = [m.__name__ for m in walk_modules("os_dulac.commands")]
    assert "os_dulac.commands.analyze" in names
    assert "os_dulac.commands.local_dulac" in names
    assert list(walk_modules("os_dulac.not_there")) == []
