import os

import numpy as np
import pytest

from bellkit import _kernels


def pytest_configure(config):
    # force a kernel backend for the whole session, e.g.
    # BELLKIT_TEST_BACKEND=numpy to exercise the fallback path
    name = os.environ.get("BELLKIT_TEST_BACKEND")
    if name:
        _kernels.set_backend(name)


@pytest.fixture(params=sorted(_kernels.available_backends()))
def backend(request):
    """Run the test once per available kernel backend."""
    previous = _kernels.active
    _kernels.set_backend(request.param)
    yield _kernels.active
    _kernels.active = previous


@pytest.fixture
def rand():
    """Seeded generator for fuzz inputs (test data only, not library RNG)."""
    return np.random.default_rng(20240817)


def random_pm1(rand, n: int) -> np.ndarray:
    return rand.choice(np.array([-1, 1], dtype=np.int8), size=n)
