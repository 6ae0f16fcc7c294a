import numpy as np
import pytest

from lib import config
from lib.numeric import Tolerance


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def tol():
    return Tolerance()


@pytest.fixture(autouse=True)
def reset_tolerance():
    yield
    config.set_tolerance(Tolerance())


@pytest.fixture
def no_config(tmp_path):
    """Path of a config file that does not exist, so the home directory is never read."""
    return str(tmp_path / "absent.json")
