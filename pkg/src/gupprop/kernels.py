"""Extended Mehler generating function and the auxiliary kernels F, G.

F and G are functions of a complex angle ``mu`` (physically omega*T) with
the endpoints q0, qf entering only through q0^2 + qf^2 and q0*qf.  Their
mu-derivatives are coded analytically.

Branches: every half-integer power is principal.  For 0 < Re(mu) < pi and
Im(mu) <= 0, ``2i sin(mu)`` stays in the upper half plane, so the principal
square root is continuous along the damping path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import CausticError, DomainError, InvalidParameters
from .params import OscillatorParams
from .specfun import hermite, hermite_table

CAUSTIC_GUARD = 1e-9
SQRT_2I = np.sqrt(2j)


@dataclass(frozen=True)
class MehlerArgs:
    m_off: int
    n_off: int
    t: complex
    x: float
    y: float

    def __post_init__(self):
        if self.m_off < 0 or self.n_off < 0:
            raise InvalidParameters("index offsets must be non-negative")

    def check_domain(self):
        if not abs(2 * self.t) < 1:
            raise DomainError(f"|2t| = {abs(2 * self.t):.6g} must be < 1")


class SeriesResult(NamedTuple):
    value: complex
    tail: float
    certified: bool


def mehler_extended(args: MehlerArgs) -> complex:
    """Closed form of sum_k t^k/k! H_{k+m}(x) H_{k+n}(y)."""
    args.check_domain()
    m, n, t, x, y = args.m_off, args.n_off, complex(args.t), args.x, args.y
    one_m = 1.0 - 4.0 * t * t
    root = np.sqrt(one_m)
    gauss = np.exp((4.0 * t * x * y - 4.0 * t * t * (x * x + y * y)) / one_m)
    u = (x - 2.0 * t * y) / root
    v = (y - 2.0 * t * x) / root
    total = 0.0j
    for k in range(min(m, n) + 1):
        weight = 4.0**k * math.factorial(k) * math.comb(m, k) * math.comb(n, k)
        total += weight * t**k * hermite(m - k, u) * hermite(n - k, v)
    return complex(root ** (-(m + n + 1)) * gauss * total)


def mehler_series_oracle(args: MehlerArgs, k_max: int = 200, rel_tol: float = 1e-13) -> SeriesResult:
    """Partial sum of the defining series with a tail check.

    Summed in extended precision (``np.longdouble``), whose exponent range
    holds k! and H_k(x) directly for the k_max used here; the sum is
    rounded to double at the end.  Cancellation between large terms at
    imaginary or negative t otherwise costs several digits.
    """
    args.check_domain()
    values, tails, certified = mehler_series_batch(
        args.m_off, args.n_off, args.t, [args.x], [args.y], k_max, rel_tol
    )
    return SeriesResult(complex(values[0]), float(tails[0]), bool(certified[0]))


def mehler_series_batch(m_off: int, n_off: int, t: complex, xs, ys, k_max: int = 200, rel_tol: float = 1e-13):
    """:func:`mehler_series_oracle` over paired arrays of x and y.

    Returns (values, tails, certified) arrays.
    """
    if not abs(2 * t) < 1:
        raise DomainError(f"|2t| = {abs(2 * t):.6g} must be < 1")
    hx = _extended_hermite(k_max + m_off, xs)[m_off:]
    hy = _extended_hermite(k_max + n_off, ys)[n_off:]
    t_re = np.longdouble(complex(t).real)
    t_im = np.longdouble(complex(t).imag)
    # (re, im) of t^k / k!, k = 0..k_max
    p_re = np.empty(k_max + 1, dtype=np.longdouble)
    p_im = np.empty(k_max + 1, dtype=np.longdouble)
    p_re[0], p_im[0] = 1, 0
    for k in range(k_max):
        p_re[k + 1] = (p_re[k] * t_re - p_im[k] * t_im) / (k + 1)
        p_im[k + 1] = (p_re[k] * t_im + p_im[k] * t_re) / (k + 1)
    h = hx * hy
    term_re = p_re[:, None] * h
    term_im = p_im[:, None] * h
    values = term_re.sum(axis=0).astype(float) + 1j * term_im.sum(axis=0).astype(float)
    tails = (np.abs(term_re[-2:]) + np.abs(term_im[-2:])).max(axis=0).astype(float)
    certified = (tails <= rel_tol * np.maximum(np.abs(values), 1e-300)) | (t == 0)
    return values, tails, certified


def _extended_hermite(n_max: int, x) -> np.ndarray:
    """H_0..H_{n_max} at each x, shape (n_max + 1, len(x)), in long double."""
    x = np.atleast_1d(np.asarray(x, dtype=np.longdouble))
    out = np.empty((n_max + 1, x.size), dtype=np.longdouble)
    out[0] = 1
    if n_max >= 1:
        out[1] = 2 * x
    for j in range(1, n_max):
        out[j + 1] = 2 * x * out[j] - 2 * j * out[j - 1]
    return out


# -- F(mu), G(mu) ------------------------------------------------------------


def _sin_guard(mu):
    s = np.sin(mu)
    if np.any(np.abs(s) < CAUSTIC_GUARD):
        raise CausticError(f"|sin(mu)| < {CAUSTIC_GUARD} at mu = {mu}")
    return s


def _invariants(q0, qf, params: OscillatorParams):
    kappa = params.m * params.omega / params.hbar
    return kappa, q0 * q0 + qf * qf, q0 * qf


def _exponent_terms(mu, q0, qf, params):
    """E(mu) and its first two mu-derivatives, where F = e^{i mu/2} (2i sin mu)^{-1/2} e^E."""
    kappa, a, b = _invariants(q0, qf, params)
    s = _sin_guard(mu)
    c = np.cos(mu)
    half = 0.5j * kappa
    e0 = half * (a * c - 2 * b) / s
    e1 = half * (2 * b * c - a) / (s * s)
    e2 = half * (2 * a * c - 2 * b * s * s - 4 * b * c * c) / s**3
    return s, c, e0, e1, e2


def F_of_mu(mu, q0, qf, params: OscillatorParams):
    s, _, e0, _, _ = _exponent_terms(mu, q0, qf, params)
    return np.exp(0.5j * mu) / np.sqrt(2j * s) * np.exp(e0)


def F_derivatives(mu, q0, qf, params: OscillatorParams):
    """(dF/dmu, d^2F/dmu^2) from F' = F L, F'' = F (L^2 + L')."""
    s, c, e0, e1, e2 = _exponent_terms(mu, q0, qf, params)
    f = np.exp(0.5j * mu) / np.sqrt(2j * s) * np.exp(e0)
    log_d = 0.5j - 0.5 * c / s + e1
    log_d2 = 0.5 / (s * s) + e2
    return f * log_d, f * (log_d * log_d + log_d2)


def G_of_mu(mu, q0, qf, params: OscillatorParams):
    s, _, e0, _, _ = _exponent_terms(mu, q0, qf, params)
    f = np.exp(0.5j * mu) / np.sqrt(2j * s) * np.exp(e0)
    return SQRT_2I * np.exp(1j * mu) / s * (2 * e0 + 1) * f


def G_derivative(mu, q0, qf, params: OscillatorParams):
    s, c, e0, e1, _ = _exponent_terms(mu, q0, qf, params)
    f = np.exp(0.5j * mu) / np.sqrt(2j * s) * np.exp(e0)
    prefactor = SQRT_2I * np.exp(1j * mu) / s
    g = prefactor * (2 * e0 + 1) * f
    log_d = 0.5j - 0.5 * c / s + e1
    return g * (1j - c / s + log_d) + prefactor * 2 * e1 * f


def mehler_oscillator_kernel(mu, q0, qf, params: OscillatorParams):
    """sum_n phi_n(qf) phi_n(q0) exp(-i (n + 1/2) mu), in closed form."""
    kappa, a, b = _invariants(q0, qf, params)
    s = _sin_guard(mu)
    c = np.cos(mu)
    return np.sqrt(kappa / (2j * math.pi * s)) * np.exp(0.5j * kappa * (a * c - 2 * b) / s)


__all__ = [
    "CAUSTIC_GUARD",
    "MehlerArgs",
    "SeriesResult",
    "mehler_extended",
    "mehler_series_oracle",
    "mehler_series_batch",
    "mehler_oscillator_kernel",
    "F_of_mu",
    "F_derivatives",
    "G_of_mu",
    "G_derivative",
    "hermite_table",
]
