import math
from pathlib import Path

import numpy as np
import pytest

from experiments.sweeps import alpha_state, beta_state
from model.operators import spin_operators

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture
def spin1():
    """(Jx, Jy, Jz) for j = 1"""
    return spin_operators(2)


@pytest.fixture
def alpha_pi4():
    return alpha_state(math.pi / 4)


@pytest.fixture
def beta_pi8():
    return beta_state(math.pi / 8)
