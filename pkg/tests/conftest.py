import os

import numpy as np
import pytest

from simpca import center_scale

DATA_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "data")
EUROJOBS = os.path.join(DATA_DIR, "eurojobs.csv")


def random_data(rng, n=None, p=None, scaling="none"):
    """A random centered DataMatrix with a non-trivial covariance structure."""
    if n is None:
        n = int(rng.integers(8, 31))
    if p is None:
        p = int(rng.integers(3, 13))
    base = rng.standard_normal((n, max(2, p // 2)))
    mix = rng.standard_normal((max(2, p // 2), p))
    raw = base @ mix + 0.35 * rng.standard_normal((n, p)) + rng.normal(0, 3, p)
    return center_scale(raw, scaling=scaling)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
