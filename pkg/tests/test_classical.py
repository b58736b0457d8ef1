import math

import numpy as np
import pytest

from gupprop.classical import (
    action_along,
    action_beta_slope,
    envelope_slope,
    eom_rhs,
    integrate,
    solve_bvp,
)
from gupprop.errors import CausticError, InvalidParameters, SolverError
from gupprop.params import OscillatorParams
from gupprop.propagator import Endpoints, s0, s1

EP = Endpoints(0.3, 0.7)


def test_eom_examples():
    params = OscillatorParams(m=2.0, omega=1.5, beta=0.01)
    assert eom_rhs(0.0, 0.0, params) == (0.0, 0.0)
    dq, dp = eom_rhs(0.4, -1.2, params)
    assert dq == pytest.approx(-1.2 / 2 + 4 * 0.01 * (-1.2) ** 3 / 2)
    assert dp == pytest.approx(-2.0 * 1.5**2 * 0.4)
    assert eom_rhs(0.4, -1.2, params.with_beta(0.0)) == (-0.6, -2.0 * 1.5**2 * 0.4)


def test_harmonic_boundary_solution():
    params = OscillatorParams(omega=1.3)
    T = 1.7
    traj = solve_bvp(EP, T, params)
    w = params.omega
    exact = (EP.q0 * np.sin(w * (T - traj.t)) + EP.qf * np.sin(w * traj.t)) / math.sin(w * T)
    assert np.abs(traj.q - exact).max() < 1e-8
    assert traj.boundary_residual < 1e-10 * max(1.0, abs(EP.qf))
    assert np.all(np.diff(traj.t) > 0)
    assert traj.steps >= 10_000


def test_trivial_path():
    traj = solve_bvp(Endpoints(0.0, 0.0), 1.0, OscillatorParams(beta=1e-3))
    assert not traj.q.any() and not traj.p.any()
    assert action_along(traj) == 0.0


def test_samples_are_ordered_triples():
    traj = solve_bvp(EP, 1.0, OscillatorParams(), steps=10)
    samples = traj.samples
    assert len(samples) == 11
    assert samples[0] == (0.0, EP.q0, traj.p[0])


@pytest.mark.parametrize("beta", [0.0, 1e-4, 1e-2])
def test_energy_conservation(beta):
    traj = solve_bvp(Endpoints(-0.8, 0.7), 2.2, OscillatorParams(omega=0.7, beta=beta))
    assert traj.energy_drift() < 1e-9


def test_time_reversal():
    params = OscillatorParams(omega=1.1, beta=1e-3)
    forward = solve_bvp(EP, 1.4, params)
    backward = solve_bvp(EP.swapped(), 1.4, params)
    assert np.abs(forward.q - backward.q[::-1]).max() < 1e-9
    assert np.abs(forward.p + backward.p[::-1]).max() < 1e-9
    assert action_along(forward) == pytest.approx(action_along(backward), rel=1e-11)


def test_rk4_fourth_order():
    params = OscillatorParams(omega=1.0, beta=0.0)
    duration = 2.0
    errors = []
    for steps in (100, 200, 400):
        _, q, p = integrate(0.3, 0.5, duration, params, steps)
        exact_q = 0.3 * math.cos(duration) + 0.5 * math.sin(duration)
        errors.append(abs(q[-1] - exact_q))
    for coarse, fine in zip(errors, errors[1:]):
        assert 14 < coarse / fine < 18


def test_action_error_fourth_order():
    params = OscillatorParams(omega=1.2)
    exact = s0(EP, 1.5, params).real
    errors = [abs(action_along(solve_bvp(EP, 1.5, params, steps=n)) - exact) for n in (50, 100, 200)]
    for coarse, fine in zip(errors, errors[1:]):
        assert 13 < coarse / fine < 19


def test_step_halving_at_default_resolution():
    params = OscillatorParams(beta=1e-4)
    a = action_along(solve_bvp(EP, 1.0, params))
    b = action_along(solve_bvp(EP, 1.0, params, steps=20_000))
    assert abs(a - b) < 1e-9


def test_action_matches_s0():
    for omega, T, ep in [(1.0, 1.0, EP), (0.7, 2.2, Endpoints(-0.8, 0.3)), (1.6, 0.6, Endpoints(0.7, -0.8))]:
        params = OscillatorParams(omega=omega)
        assert action_along(solve_bvp(ep, T, params)) == pytest.approx(s0(ep, T, params).real, rel=1e-7)


def test_envelope_and_slope_match_s1():
    params = OscillatorParams()
    expected = s1(EP, 1.0, params).real
    assert envelope_slope(EP, 1.0, params) == pytest.approx(expected, rel=1e-4)
    estimate = action_beta_slope(EP, 1.0, params)
    assert not estimate.flagged
    assert estimate.value == pytest.approx(expected, rel=1e-3)


def test_slope_vanishes_at_origin():
    assert action_beta_slope(Endpoints(0.0, 0.0), 1.0, OscillatorParams()).value == 0.0


def test_free_particle_slope():
    m, T = 1.3, 0.9
    params = OscillatorParams(m=m, omega=1e-5)
    expected = -(m**3) * (EP.q0 - EP.qf) ** 4 / T**3
    assert envelope_slope(EP, T, params) == pytest.approx(expected, rel=1e-6)
    assert envelope_slope(EP, T, OscillatorParams(m=m, omega=0.0)) == pytest.approx(expected, rel=1e-9)


def test_secant_iterations():
    traj = solve_bvp(EP, 1.0, OscillatorParams(beta=1e-4))
    assert traj.iterations < 20


def test_guards():
    with pytest.raises(CausticError):
        solve_bvp(EP, math.pi, OscillatorParams())
    with pytest.raises(InvalidParameters):
        solve_bvp(EP, 1.0, OscillatorParams(), steps=11)
    with pytest.raises(SolverError):
        solve_bvp(EP, 1.0, OscillatorParams(beta=0.05), max_iter=2)
    with pytest.raises(InvalidParameters):
        action_beta_slope(EP, 1.0, OscillatorParams(), h_values=(1e-4, 3e-5))
