import cmath
import math

import pytest

from gupprop.errors import CausticError
from gupprop.params import OscillatorParams
from gupprop.propagator import (
    ComplexDuration,
    Endpoints,
    corrected_first_order,
    corrected_kernel,
    f_factor,
    mehler_kernel,
    oscillator_prefactor,
    s0,
    s1,
)
from gupprop.propagator import actions

from oracles import forward_richardson

EP = Endpoints(0.3, 0.7)


def rel(a, b):
    return abs(a - b) / abs(b)


def test_s0_quarter_period():
    assert s0(EP, math.pi / 2, OscillatorParams()) == pytest.approx(-0.21, abs=1e-15)


def test_actions_vanish_at_origin(unit):
    origin = Endpoints(0.0, 0.0)
    T = ComplexDuration(1.2, 0.1)
    assert s0(origin, T, unit) == 0
    assert s1(origin, T, unit) == 0


def test_f_at_origin_is_quantum_term_only():
    params = OscillatorParams(m=1.4, omega=0.8, hbar=0.6)
    value = f_factor(Endpoints(0.0, 0.0), 1.1, params)
    x = 0.8 * 1.1
    expected = 3j * 0.6 * 1.4 * 0.8 / (8 * math.sin(x) ** 2) * (2 * x + 5 * math.sin(x) * math.cos(x) + x * math.cos(2 * x))
    assert value == pytest.approx(expected, rel=1e-14)


def test_s0_real_at_real_time(unit):
    assert s0(EP, ComplexDuration(1.3), unit).imag == 0


def test_free_limits():
    m, T = 1.7, 1.3
    params = OscillatorParams(m=m, omega=1e-4 / T)
    d = EP.q0 - EP.qf
    assert rel(s0(EP, T, params), m * d * d / (2 * T)) < 1e-6
    assert rel(s1(EP, T, params), -(m**3) * d**4 / T**3) < 1e-6
    assert rel(f_factor(EP, T, params), 3j * m / T - 6 * m * m * d * d / T**2) < 1e-6


def test_series_exact_at_zero_frequency():
    params = OscillatorParams(m=2.0, omega=0.0)
    T = 0.9 - 0.05j
    d = EP.q0 - EP.qf
    assert s0(EP, T, params) == pytest.approx(2.0 * d * d / (2 * T), rel=1e-15)
    assert s1(EP, T, params) == pytest.approx(-8.0 * d**4 / T**3, rel=1e-14)
    assert oscillator_prefactor(T, params) == pytest.approx(cmath.sqrt(2.0 / (2j * math.pi * T)), rel=1e-15)


@pytest.mark.parametrize("T", [0.05, 0.05 - 0.004j, 0.045 + 0.02j])
def test_taylor_and_direct_agree_in_overlap(monkeypatch, T):
    params = OscillatorParams(m=1.2, hbar=0.9)
    ep = Endpoints(-0.8, 0.7)
    funcs = (
        lambda: s0(ep, T, params),
        lambda: s1(ep, T, params),
        lambda: f_factor(ep, T, params),
        lambda: oscillator_prefactor(T, params),
    )
    monkeypatch.setattr(actions, "SMALL_ANGLE", 1.0)
    series = [f() for f in funcs]
    monkeypatch.setattr(actions, "SMALL_ANGLE", 0.0)
    direct = [f() for f in funcs]
    for a, b in zip(series, direct):
        assert rel(a, b) < 1e-9


def test_endpoint_symmetry():
    params = OscillatorParams(omega=1.3, m=0.8)
    T = ComplexDuration(1.1, 0.07)
    swapped = EP.swapped()
    for fn in (s0, s1, f_factor):
        assert fn(EP, T, params) == fn(swapped, T, params)


def test_caustic_guard(unit):
    with pytest.raises(CausticError):
        s1(EP, math.pi, unit)
    with pytest.raises(CausticError):
        corrected_kernel(EP, ComplexDuration(math.pi), unit)


def test_corrected_reduces_to_mehler(unit):
    T = ComplexDuration(1.7, 0.1)
    assert corrected_kernel(EP, T, unit).amplitude == pytest.approx(mehler_kernel(EP, T, unit), rel=1e-15)


def test_corrected_first_order_by_beta_differences():
    params = OscillatorParams(omega=1.2)
    T = ComplexDuration(0.9, 0.05)
    coeff = corrected_first_order(EP, T, params)

    def kernel(beta):
        return corrected_kernel(EP, T, params.with_beta(beta)).amplitude

    numeric = forward_richardson(kernel, 1e-3)
    assert rel(coeff.k1, numeric) < 1e-8
    assert rel(coeff.k0, mehler_kernel(EP, T, params)) < 1e-15
