import shutil

import pytest

from config import Config
from rng import XorShift64Star


@pytest.fixture
def rng():
    return XorShift64Star(20240601)


@pytest.fixture
def geng():
    path = shutil.which(Config.GENG_PATH)
    if path is None:
        pytest.skip("nauty geng is not installed")
    return path
