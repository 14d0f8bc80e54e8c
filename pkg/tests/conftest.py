import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qjump.ising import IsingInstance, generate_regular_instance


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def ferro_pair():
    """Two spins, J=1, no fields: ground states 00 and 11 at energy -1."""
    return IsingInstance(2, [(0, 1, 1.0)], [0.0, 0.0])


@pytest.fixture
def regular16():
    return generate_regular_instance(16, 4, seed=20)


@pytest.fixture
def regular10():
    return generate_regular_instance(10, 4, seed=21)
