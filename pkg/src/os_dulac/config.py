from enum import Enum

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from os_dulac.exceptions import InvalidRegionError
from os_dulac.geometry import Box2

ENV_PREFIX = "OS_DULAC_"


class StrEnum(str, Enum):
    """Enum where members are also (and must be) string"""


class LogLevel(StrEnum):
    critical = "critical"
    error = "error"
    warning = "warning"
    info = "info"
    debug = "debug"


class KitConfig(BaseSettings):
    """Run-wide knobs.  Every field can be set by ``OS_DULAC_<NAME>`` or a config file."""

    LOG_LEVEL: LogLevel = LogLevel.warning
    DEBUG: bool = False
    WORKERS: int = 1

    # certification
    DEPTH: int = 12
    MIN_RADIUS: float = 1e-3

    # numerics
    TOL: float = 1e-10
    GRID_N: int = 32
    DEDUP_RADIUS: float = 1e-6
    CLASSIFY_THRESHOLD: float = 1e-9
    MAX_ITERS: int = 50
    T_SPAN: float = 10.0

    # analysis
    TILES: int = 10
    MAX_SCAN_SEEDS: int = 12

    # first-integral verification
    SEED: int = 0
    SAMPLE_BOX: str = "-2:2,-2:2"

    model_config = SettingsConfigDict(
        env_prefix=ENV_PREFIX, extra="allow", validate_default=True
    )

    @field_validator("DEPTH")
    @classmethod
    def _depth(cls, v):
        if v < 0:
            raise ValueError("must not be negative")
        return v

    @field_validator("GRID_N", "MAX_ITERS", "TILES", "MAX_SCAN_SEEDS")
    @classmethod
    def _positive(cls, v):
        if v < 1:
            raise ValueError("must be at least 1")
        return v

    @field_validator("WORKERS")
    @classmethod
    def _workers(cls, v):
        return max(v, 1)

    @field_validator("SAMPLE_BOX")
    @classmethod
    def _region(cls, v):
        try:
            Box2.parse(v)
        except InvalidRegionError as e:
            raise ValueError(str(e)) from e
        return v
