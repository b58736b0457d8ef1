"""Classical-action pieces S0, S1 and the prefactor correction f.

For |omega T| below ``SMALL_ANGLE`` each quantity is evaluated from the
Taylor expansions (in x = omega T) of the x-dependent weights multiplying
the endpoint invariants; the expansions are exact at omega = 0 and give the
free-particle limits without cancellation.
"""

from __future__ import annotations

import numpy as np

from ..errors import CausticError
from ..kernels import CAUSTIC_GUARD
from ..params import OscillatorParams
from .types import ComplexDuration, Endpoints

SMALL_ANGLE = 1e-2

# Coefficients of x^0, x^2, x^4, ... for each weight function.
_TAYLOR = {
    # x cot x
    "x_cot": (1, -1 / 3, -1 / 45, -2 / 945, -1 / 4725, -2 / 93555, -1382 / 638512875, -4 / 18243225),
    # x / sin x
    "x_csc": (1, 1 / 6, 7 / 360, 31 / 15120, 127 / 604800, 73 / 3421440,
              1414477 / 653837184000, 8191 / 37362124800),
    # sqrt(x / sin x)
    "sqrt_x_csc": (1, 1 / 12, 1 / 160, 61 / 120960, 1261 / 29030400, 79 / 20275200,
                   66643 / 185980354560, 16820653 / 502146957312000),
    # x^3 (12x + 8 sin 2x + sin 4x) / sin^4 x
    "s1_quartic": (32, 0, 64 / 15, 512 / 945, 32 / 315, 1024 / 51975,
                   461632 / 127702575, 131584 / 212837625),
    # 4 x^3 (12x cos x + 11 sin x + 3 sin 3x) / sin^4 x
    "s1_mixed": (128, 0, 16 / 15, 32 / 945, -31 / 315, -1976 / 51975,
                 -9523411 / 1021620600, -1574399 / 851350500),
    # 12 x^3 (4x + 2x cos 2x + 5 sin 2x) / sin^4 x
    "s1_square": (192, 0, -32 / 5, -64 / 63, 0, 128 / 3465, 44224 / 3869775, 128 / 51975),
    # x (2x + 5 sin x cos x + x cos 2x) / sin^2 x
    "f_hbar": (8, -8 / 3, 4 / 45, 4 / 189, 16 / 4725, 4 / 8505, 5528 / 91216125, 136 / 18243225),
    # x^2 (6x cos x + 10 sin x - 6 sin^3 x) / sin^3 x
    "f_sum": (16, -8 / 3, 4 / 15, -4 / 189, -8 / 675, -4 / 1485, -5528 / 11609325, -104 / 1403325),
    # x^2 (-4x (2 + cos 2x) - 20 sin x cos x) / sin^3 x
    "f_product": (-32, 16 / 3, 4 / 5, -2 / 945, -367 / 18900, -229 / 46200,
                  -3715433 / 4086482400, -5879411 / 40864824000),
}


def taylor_weight(name: str, x):
    """Evaluate one of the even weight series at x (Horner in x^2)."""
    x2 = x * x
    acc = 0.0
    for c in reversed(_TAYLOR[name]):
        acc = acc * x2 + c
    return acc


def as_time(T) -> complex:
    if isinstance(T, ComplexDuration):
        return T.value
    return complex(T)


def angle(T, params: OscillatorParams) -> complex:
    return params.omega * as_time(T)


def use_series(T, params: OscillatorParams) -> bool:
    return abs(angle(T, params)) < SMALL_ANGLE


def guarded_sin(x):
    s = np.sin(x)
    if abs(s) < CAUSTIC_GUARD:
        raise CausticError(f"|sin(omega T)| = {abs(s):.3g} below caustic guard")
    return s


def _invariants(ep: Endpoints):
    q0, qf = ep.q0, ep.qf
    return q0 * q0 + qf * qf, q0 * qf


def s0(ep: Endpoints, T, params: OscillatorParams) -> complex:
    """Unperturbed classical action."""
    a, b = _invariants(ep)
    t = as_time(T)
    x = params.omega * t
    m = params.m
    if abs(x) < SMALL_ANGLE:
        return complex(m / (2 * t) * (a * taylor_weight("x_cot", x) - 2 * b * taylor_weight("x_csc", x)))
    s = guarded_sin(x)
    return complex(m * params.omega / (2 * s) * (a * np.cos(x) - 2 * b))


def s1(ep: Endpoints, T, params: OscillatorParams) -> complex:
    """Coefficient of beta in the classical action."""
    q0, qf = ep.q0, ep.qf
    a4 = q0**4 + qf**4
    b4 = q0 * qf * (q0 * q0 + qf * qf)
    c4 = (q0 * qf) ** 2
    t = as_time(T)
    x = params.omega * t
    m = params.m
    if abs(x) < SMALL_ANGLE:
        bracket = (
            taylor_weight("s1_quartic", x) * a4
            - taylor_weight("s1_mixed", x) * b4
            + taylor_weight("s1_square", x) * c4
        )
        return complex(-(m**3) / (32 * t**3) * bracket)
    s = guarded_sin(x)
    bracket = (
        (12 * x + 8 * np.sin(2 * x) + np.sin(4 * x)) * a4
        - 4 * (12 * x * np.cos(x) + 11 * s + 3 * np.sin(3 * x)) * b4
        + 12 * (4 * x + 2 * x * np.cos(2 * x) + 5 * np.sin(2 * x)) * c4
    )
    return complex(-(m * params.omega) ** 3 / (32 * s**4) * bracket)


def f_factor(ep: Endpoints, T, params: OscillatorParams) -> complex:
    """Coefficient of beta in the prefactor bracket [1 + beta f]."""
    a, b = _invariants(ep)
    t = as_time(T)
    x = params.omega * t
    m, hbar = params.m, params.hbar
    if abs(x) < SMALL_ANGLE:
        return complex(
            3j * hbar * m / (8 * t) * taylor_weight("f_hbar", x)
            - 3 * m * m / (8 * t * t) * (a * taylor_weight("f_sum", x) + b * taylor_weight("f_product", x))
        )
    s = guarded_sin(x)
    c = np.cos(x)
    c2 = np.cos(2 * x)
    w = params.omega
    quantum = 3j * hbar * m * w / (8 * s * s) * (2 * x + 5 * s * c + x * c2)
    bracket = (
        2 * x * (3 * c * a - 2 * (2 + c2) * b)
        + 10 * s * (a - 2 * b * c)
        - 6 * s**3 * a
    )
    return complex(quantum - 3 * (m * w) ** 2 / (8 * s**3) * bracket)


def oscillator_prefactor(T, params: OscillatorParams) -> complex:
    """sqrt(m omega / (2 pi i hbar sin omega T)), principal branch."""
    t = as_time(T)
    x = params.omega * t
    if abs(x) < SMALL_ANGLE:
        return complex(np.sqrt(params.m / (2j * np.pi * params.hbar * t)) * taylor_weight("sqrt_x_csc", x))
    s = guarded_sin(x)
    return complex(np.sqrt(params.m * params.omega / (2j * np.pi * params.hbar * s)))


def omega_t_cot(T, params: OscillatorParams) -> complex:
    """omega^2 T cot(omega T), finite as omega -> 0."""
    t = as_time(T)
    x = params.omega * t
    if abs(x) < SMALL_ANGLE:
        return complex(params.omega * taylor_weight("x_cot", x))
    s = guarded_sin(x)
    return complex(params.omega**2 * t * np.cos(x) / s)
