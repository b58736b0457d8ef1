"""Classical trajectories of the quartic-deformed oscillator.

H = p^2/2m + (beta/m) p^4 + m omega^2 q^2 / 2.  Boundary-value problems
q(0) = q0, q(T) = qf are solved by shooting on the initial momentum with a
secant iteration and fixed-step RK4.  Two independent routes to dS/dbeta
at beta = 0 are provided:

* ``envelope_slope``: -(1/m) * integral of p(t)^4 along the beta = 0 path;
* ``action_beta_slope``: Richardson-extrapolated (S(beta) - S(0)) / beta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CausticError, InvalidParameters, SolverError
from .params import OscillatorParams
from .propagator.types import Endpoints

DEFAULT_STEPS = 10_000
CONJUGATE_GUARD = 1e-3


def hamiltonian(q, p, params: OscillatorParams):
    m = params.m
    return p * p / (2 * m) + params.beta * p**4 / m + 0.5 * m * params.omega**2 * q * q


def eom_rhs(q: float, p: float, params: OscillatorParams) -> tuple[float, float]:
    """(dq/dt, dp/dt) from Hamilton's equations."""
    m = params.m
    return p / m + 4 * params.beta * p**3 / m, -m * params.omega**2 * q


def _rk4_endpoint(q: float, p: float, h: float, steps: int, m: float, beta: float, k: float):
    # scalar loop; k = m omega^2
    c4 = 4 * beta
    for _ in range(steps):
        p2 = p * p
        dq1 = (p + c4 * p * p2) / m
        dp1 = -k * q
        qa, pa = q + 0.5 * h * dq1, p + 0.5 * h * dp1
        dq2 = (pa + c4 * pa * pa * pa) / m
        dp2 = -k * qa
        qb, pb = q + 0.5 * h * dq2, p + 0.5 * h * dp2
        dq3 = (pb + c4 * pb * pb * pb) / m
        dp3 = -k * qb
        qc, pc = q + h * dq3, p + h * dp3
        dq4 = (pc + c4 * pc * pc * pc) / m
        dp4 = -k * qc
        q += h / 6 * (dq1 + 2 * dq2 + 2 * dq3 + dq4)
        p += h / 6 * (dp1 + 2 * dp2 + 2 * dp3 + dp4)
    return q, p


def integrate(q0: float, p0: float, duration: float, params: OscillatorParams, steps: int = DEFAULT_STEPS):
    """RK4 samples (t, q, p) on a uniform grid of ``steps`` intervals."""
    h = duration / steps
    m, beta, k = params.m, params.beta, params.m * params.omega**2
    ts = np.linspace(0.0, duration, steps + 1)
    qs = np.empty(steps + 1)
    ps = np.empty(steps + 1)
    q, p = q0, p0
    qs[0], ps[0] = q, p
    for i in range(1, steps + 1):
        q, p = _rk4_endpoint(q, p, h, 1, m, beta, k)
        qs[i], ps[i] = q, p
    return ts, qs, ps


@dataclass(frozen=True)
class Trajectory:
    t: np.ndarray
    q: np.ndarray
    p: np.ndarray
    boundary_residual: float
    iterations: int = 0
    params: OscillatorParams = field(default_factory=OscillatorParams)

    @property
    def samples(self) -> list[tuple[float, float, float]]:
        return list(zip(self.t.tolist(), self.q.tolist(), self.p.tolist()))

    @property
    def steps(self) -> int:
        return len(self.t) - 1

    def energy_drift(self) -> float:
        """max_t |H(t) - H(0)| / |H(0)| (absolute drift when H(0) = 0)."""
        energy = hamiltonian(self.q, self.p, self.params)
        scale = abs(energy[0]) or 1.0
        return float(np.abs(energy - energy[0]).max() / scale)


def _initial_momentum(ep: Endpoints, duration: float, params: OscillatorParams) -> float:
    w = params.omega
    if w == 0:
        return params.m * (ep.qf - ep.q0) / duration
    x = w * duration
    return params.m * w * (ep.qf - ep.q0 * math.cos(x)) / math.sin(x)


def solve_bvp(
    ep: Endpoints,
    duration: float,
    params: OscillatorParams,
    steps: int = DEFAULT_STEPS,
    max_iter: int = 40,
) -> Trajectory:
    """Shooting solution of q(0) = q0, q(duration) = qf."""
    if not duration > 0:
        raise InvalidParameters("duration must be positive")
    if steps < 2 or steps % 2:
        raise InvalidParameters("steps must be a positive even number")
    # the first conjugate point is at omega T = pi; small omega T is free-like
    x = params.omega * duration
    if x > 0.5 * math.pi and abs(math.sin(x)) <= CONJUGATE_GUARD:
        raise CausticError("omega T is too close to a conjugate point")
    h = duration / steps
    m, beta, k = params.m, params.beta, params.m * params.omega**2
    target = ep.qf
    tol = 1e-12 * max(1.0, abs(target))

    def miss(p0):
        return _rk4_endpoint(ep.q0, p0, h, steps, m, beta, k)[0] - target

    p_a = _initial_momentum(ep, duration, params)
    r_a = miss(p_a)
    iterations = 1
    p_b = p_a * (1 - 1e-3) - 1e-6
    if abs(r_a) > tol:
        r_b = miss(p_b)
        iterations += 1
        while abs(r_b) > tol:
            if iterations >= max_iter:
                raise SolverError(f"secant did not converge, residual {abs(r_b):.3g}")
            if r_b == r_a:
                raise SolverError("secant stalled (flat residual)")
            p_a, p_b = p_b, p_b - r_b * (p_b - p_a) / (r_b - r_a)
            r_a, r_b = r_b, miss(p_b)
            iterations += 1
    else:
        p_b = p_a
    ts, qs, ps = integrate(ep.q0, p_b, duration, params, steps)
    return Trajectory(ts, qs, ps, float(abs(qs[-1] - target)), iterations, params)


def _simpson(values: np.ndarray, h: float) -> float:
    return float(h / 3 * (values[0] + values[-1] + 4 * values[1:-1:2].sum() + 2 * values[2:-1:2].sum()))


def action_along(traj: Trajectory, params: OscillatorParams | None = None) -> float:
    """S = integral of (p dq/dt - H) dt by composite Simpson over the samples."""
    params = params or traj.params
    q, p = traj.q, traj.p
    qdot = p / params.m + 4 * params.beta * p**3 / params.m
    lagrangian = p * qdot - hamiltonian(q, p, params)
    return _simpson(lagrangian, traj.t[1] - traj.t[0])


def envelope_slope(ep: Endpoints, duration: float, params: OscillatorParams, steps: int = DEFAULT_STEPS) -> float:
    """dS/dbeta at beta = 0 as -(1/m) * integral of p^4 on the unperturbed path."""
    traj = solve_bvp(ep, duration, params.with_beta(0.0), steps)
    return -_simpson(traj.p**4, traj.t[1] - traj.t[0]) / params.m


@dataclass(frozen=True)
class SlopeEstimate:
    value: float
    raw: tuple[float, ...]
    flagged: bool


def action_beta_slope(
    ep: Endpoints,
    duration: float,
    params: OscillatorParams,
    h_values=(1e-4, 5e-5, 2.5e-5),
    steps: int = DEFAULT_STEPS,
) -> SlopeEstimate:
    """Richardson-extrapolated finite-beta slope of the on-shell action.

    ``h_values`` must form a halving sequence.  The estimate is flagged when
    successive raw slopes do not approach each other monotonically.
    """
    h_values = tuple(float(h) for h in h_values)
    if len(h_values) < 2:
        raise InvalidParameters("need at least two beta samples")
    for big, small in zip(h_values, h_values[1:]):
        if not math.isclose(big, 2 * small, rel_tol=1e-12):
            raise InvalidParameters("h_values must halve successively")
    base = action_along(solve_bvp(ep, duration, params.with_beta(0.0), steps))
    raw = []
    for h in h_values:
        s_h = action_along(solve_bvp(ep, duration, params.with_beta(h), steps))
        raw.append((s_h - base) / h)
    # Neville table for D(h) = S1 + c1 h + c2 h^2 + ...
    table = list(raw)
    for level in range(1, len(table)):
        factor = 2.0**level
        table = [(factor * table[i + 1] - table[i]) / (factor - 1) for i in range(len(table) - 1)]
    diffs = [abs(a - b) for a, b in zip(raw, raw[1:])]
    flagged = any(later > earlier for earlier, later in zip(diffs, diffs[1:]))
    return SlopeEstimate(table[0], tuple(raw), flagged)
