"""Shared fixtures: seeded generators, random points and an isolated config."""

import os
import tempfile

# must happen before src.config creates its singleton
os.environ.setdefault("SIEGELTHETA_CONFIG_DIR", tempfile.mkdtemp(prefix="siegeltheta-tests-"))

import numpy as np
import pytest

from src.config import config
from src.generators import random_point


@pytest.fixture(autouse=True)
def default_config():
    config.reset()
    yield
    config.reset()


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def make_point(rng):
    def factory(g=1, m=1, **kwargs):
        return random_point(rng, g, m, **kwargs)
    return factory
