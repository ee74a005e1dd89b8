import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def bell_state() -> np.ndarray:
    v = np.zeros(4, dtype=complex)
    v[0] = v[3] = 1 / np.sqrt(2)
    return np.outer(v, v.conj())
