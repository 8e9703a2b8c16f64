import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(0)


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
