import pytest

from gupprop.params import OscillatorParams


@pytest.fixture
def unit():
    """m = hbar = omega = 1, beta = 0."""
    return OscillatorParams()
