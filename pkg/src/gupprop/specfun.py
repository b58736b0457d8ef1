"""Hermite polynomials and normalized oscillator eigenfunctions.

The eigenfunctions are generated by the normalized three-term recurrence

    u_{n+1} = sqrt(2/(n+1)) xi u_n - sqrt(n/(n+1)) u_{n-1},

carried as a mantissa plus a running log-offset, so the Gaussian factor never
underflows and the polynomial growth never overflows.  Levels well beyond
n = 2000 are reachable at any position.
"""

from __future__ import annotations

import math

import numpy as np

from .params import OscillatorParams

_RESCALE = 1e150
_LOG_RESCALE = math.log(_RESCALE)


def hermite(n: int, z):
    """Physicists' Hermite polynomial H_n(z) by upward recurrence.

    ``z`` may be a real or complex scalar or a numpy array.
    """
    if n < 0:
        raise ValueError("Hermite degree must be non-negative")
    h_prev = np.ones_like(z) if isinstance(z, np.ndarray) else 1.0 + 0 * z
    if n == 0:
        return h_prev
    h = 2 * z * h_prev
    for k in range(1, n):
        h_prev, h = h, 2 * z * h - 2 * k * h_prev
    return h


def hermite_table(n_max: int, z) -> np.ndarray:
    """Array ``[H_0(z), ..., H_{n_max}(z)]`` (leading axis is the degree)."""
    z = np.asarray(z)
    out = np.empty((n_max + 1,) + z.shape, dtype=np.result_type(z, float))
    out[0] = 1.0
    if n_max >= 1:
        out[1] = 2 * z
    for k in range(1, n_max):
        out[k + 1] = 2 * z * out[k] - 2 * k * out[k - 1]
    return out


def _log_norm0(params: OscillatorParams) -> float:
    return 0.25 * math.log(params.m * params.omega / (math.pi * params.hbar))


def log_phi_table(n_max: int, x, params: OscillatorParams):
    """Sign and log-magnitude of phi_0 .. phi_{n_max} at positions ``x``.

    Returns ``(sign, logabs)`` arrays of shape ``(n_max + 1,) + shape(x)``.
    Exact zeros (odd levels at the origin) have ``logabs == -inf``.
    """
    params.require_oscillator()
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    xi = params.length_scale * np.asarray(x, dtype=float)
    shape = (n_max + 1,) + xi.shape
    mant = np.empty(shape)
    offset = np.empty(shape)
    log0 = _log_norm0(params) - 0.5 * xi * xi

    u_prev = np.ones_like(xi)
    off = np.array(log0, dtype=float)
    mant[0], offset[0] = u_prev, off
    if n_max >= 1:
        u = math.sqrt(2.0) * xi
        mant[1], offset[1] = u, off
        for n in range(1, n_max):
            u_next = math.sqrt(2.0 / (n + 1)) * xi * u - math.sqrt(n / (n + 1.0)) * u_prev
            big = np.abs(u_next) > _RESCALE
            if np.any(big):
                u = np.where(big, u / _RESCALE, u)
                u_next = np.where(big, u_next / _RESCALE, u_next)
                off = np.where(big, off + _LOG_RESCALE, off)
            u_prev, u = u, u_next
            mant[n + 1], offset[n + 1] = u, off

    with np.errstate(divide="ignore"):
        logabs = np.log(np.abs(mant)) + offset
    return np.sign(mant), logabs


def phi_table(n_max: int, x, params: OscillatorParams) -> np.ndarray:
    """Values phi_0(x) .. phi_{n_max}(x); leading axis is the level."""
    sign, logabs = log_phi_table(n_max, x, params)
    return sign * np.exp(logabs)


def phi(n: int, x, params: OscillatorParams):
    """Normalized oscillator eigenfunction phi_n(x); zero for n < 0."""
    params.require_oscillator()
    if n < 0:
        return 0.0 * np.asarray(x, dtype=float) if np.ndim(x) else 0.0
    values = phi_table(n, x, params)[n]
    return values if np.ndim(x) else float(values)


def log_phi(n: int, x: float, params: OscillatorParams) -> tuple[float, float]:
    """``(sign, log|phi_n(x)|)`` for a scalar position."""
    sign, logabs = log_phi_table(n, x, params)
    return float(sign[n]), float(logabs[n])
