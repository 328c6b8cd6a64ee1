import random

import pytest


@pytest.fixture
def rng():
    """Fresh deterministic RNG per test."""
    return random.Random(0xD15C)
