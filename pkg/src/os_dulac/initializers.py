import abc
import logging

import numpy as np


class Initializer(abc.ABC):
    @abc.abstractmethod
    def init(self, config):
        pass


class InitLog(Initializer):
    def init(self, config):
        logging.basicConfig(
            level=config.LOG_LEVEL.value.upper(),
            format="[%(asctime)s] [%(name)s] [%(levelname)s] %(message)s",
            datefmt="%Y-%m-%d %H:%M:%S",
        )


class InitDebug(Initializer):
    def init(self, config):
        if config.DEBUG:
            logging.getLogger().setLevel(logging.DEBUG)
            np.seterr(all="warn")


class InitNumerics(Initializer):
    """Overflow in a trajectory is handled by the integrator, not reported."""

    def init(self, config):
        if not config.DEBUG:
            np.seterr(over="ignore", invalid="ignore")


def initialize(config, *initializers):
    for initializer in initializers:
        initializer.init(config)
    return config
