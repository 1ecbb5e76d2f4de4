import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def spd(rng, m):
    a = rng.normal(size=(m, m))
    return a @ a.T / m + 0.5 * np.eye(m)
