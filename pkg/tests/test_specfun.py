import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gupprop.errors import InvalidParameters
from gupprop.params import OscillatorParams
from gupprop.specfun import hermite, hermite_table, log_phi, phi, phi_table

from oracles import gauss_hermite_overlap, phi_via_lgamma

EXPLICIT = [
    lambda z: 1.0 + 0 * z,
    lambda z: 2 * z,
    lambda z: 4 * z**2 - 2,
    lambda z: 8 * z**3 - 12 * z,
    lambda z: 16 * z**4 - 48 * z**2 + 12,
]


def test_hermite_examples():
    assert hermite(0, 0.37) == 1
    assert hermite(4, 1.0) == pytest.approx(-20, abs=1e-13)
    assert hermite(2, 0.5) == pytest.approx(-1, abs=1e-15)


def test_hermite_matches_explicit_polynomials():
    z = np.random.default_rng(1).uniform(-3, 3, 100)
    for n, poly in enumerate(EXPLICIT):
        np.testing.assert_allclose(hermite(n, z), poly(z), rtol=1e-12, atol=1e-12)


def test_hermite_complex_and_table():
    z = 0.3 + 0.2j
    ref = np.polynomial.hermite.hermval(z, [0] * 9 + [1])
    assert abs(hermite(9, z) - ref) <= 1e-12 * abs(ref)
    table = hermite_table(9, z)
    assert table[9] == pytest.approx(hermite(9, z), rel=1e-14)


def test_hermite_rejects_negative_degree():
    with pytest.raises(ValueError):
        hermite(-1, 0.2)


def test_phi_examples(unit):
    assert phi(-2, 0.4, unit) == 0.0
    assert phi(0, 0.0, unit) == pytest.approx(math.pi**-0.25, rel=1e-15)
    norm = gauss_hermite_overlap(lambda x: phi_table(5, x, unit)[5], lambda x: phi_table(5, x, unit)[5])
    assert abs(norm - 1) < 1e-10


def test_phi_matches_lgamma_normalized_hermite():
    params = OscillatorParams(m=1.3, omega=0.8, hbar=0.9)
    for n in (0, 1, 7, 40, 90):
        for x in (-1.7, 0.0, 0.45, 2.3):
            assert phi(n, x, params) == pytest.approx(phi_via_lgamma(n, x, 1.3, 0.8, 0.9), rel=1e-10, abs=1e-14)


def test_orthonormality_to_30(unit):
    table = lambda x: phi_table(30, x, unit)  # noqa: E731
    x, w = np.polynomial.hermite.hermgauss(120)
    values = table(x) * np.exp(x * x / 2)
    gram = (values * w) @ values.T
    np.testing.assert_allclose(gram, np.eye(31), atol=1e-8)


@given(st.integers(0, 60), st.floats(-6, 6))
def test_parity(n, x):
    unit = OscillatorParams()
    assert phi(n, -x, unit) == pytest.approx((-1) ** n * phi(n, x, unit), rel=1e-13, abs=1e-300)


def test_large_degree_stays_finite(unit):
    for x in (0.0, 1.5, 30.0, 70.0):
        sign, logabs = log_phi(2500, x, unit)
        assert math.isfinite(logabs) or (x == 0.0 and sign == 0)
    values = phi_table(2000, np.array([0.3, 12.0]), unit)
    assert np.all(np.isfinite(values))
    assert np.abs(values).max() < 1.0


def test_far_tail_uses_log_domain(unit):
    # exp(-xi^2/2) alone underflows at xi = 45; the log form keeps the magnitude
    sign, logabs = log_phi(0, 45.0, unit)
    assert logabs == pytest.approx(-0.25 * math.log(math.pi) - 45.0**2 / 2, rel=1e-14)
    assert sign == 1.0


def test_invalid_omega():
    with pytest.raises(InvalidParameters):
        phi(1, 0.0, OscillatorParams(omega=0.0))
