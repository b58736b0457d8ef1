"""Level-sum representations of the propagator at damped complex time.

All sums run over n = 0..N with the truncation grown by doubling until the
last ``tail_terms`` terms of every tracked series fall below
``tail_tol * |partial sum|`` (or ``n_limit`` is hit, leaving the result
uncertified).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from ..errors import NonConvergentConfiguration
from ..params import OscillatorParams
from ..spectrum import energy_shift_array, mixing_arrays
from ..specfun import phi_table
from .actions import as_time
from .types import Endpoints, FirstOrderCoefficient, KernelValue, SpectralTruncation

DEFAULT_TRUNCATION = SpectralTruncation()


def _check_damped(T) -> complex:
    t = as_time(T)
    if not t.imag < 0:
        raise NonConvergentConfiguration("level sums need tau > 0 (T = t_real - i tau)")
    return t


def _tail_ok(terms: np.ndarray, total: complex, trunc: SpectralTruncation) -> bool:
    tail = np.abs(terms[-trunc.tail_terms:]).sum()
    scale = abs(total)
    if scale == 0.0:
        return tail == 0.0
    return bool(tail < trunc.tail_tol * scale)


def _adaptive(build, trunc: SpectralTruncation):
    """Evaluate ``build(N)`` -> dict of term arrays, doubling N until certified."""
    n = trunc.n_max
    while True:
        terms = build(n)
        sums = {k: complex(v.sum()) for k, v in terms.items()}
        ok = all(_tail_ok(v, sums[k], trunc) for k, v in terms.items())
        if ok or n >= trunc.n_limit:
            return sums, ok, n
        n = min(2 * n, trunc.n_limit)


def _tables(n: int, ep: Endpoints, params: OscillatorParams):
    table = phi_table(n + 4, np.array([ep.q0, ep.qf]), params)
    return table[:, 0], table[:, 1]


def _shifted(values: np.ndarray, n: int, offset: int) -> np.ndarray:
    """values[k + offset] for k = 0..n, zero where the index is negative."""
    out = np.zeros(n + 1)
    idx = np.arange(n + 1) + offset
    keep = idx >= 0
    out[keep] = values[idx[keep]]
    return out


def _phase(n: int, x: complex) -> np.ndarray:
    return np.exp(-1j * (np.arange(n + 1) + 0.5) * x)


def _corrections(values: np.ndarray, n: int) -> np.ndarray:
    """First-order wavefunction corrections delta psi_k at one position, k = 0..n."""
    mix = mixing_arrays(n)
    out = np.zeros(n + 1)
    for offset, coeff in mix.items():
        out += coeff * _shifted(values, n, offset)
    return out


def _validity_warning(params: OscillatorParams, n: int) -> tuple[str, ...]:
    scale = params.perturbative_scale * n * n
    if scale > 0.3:
        msg = (
            f"beta*m*hbar*omega*n_max^2 = {scale:.3g} > 0.3: first-order eigen-data "
            "are outside their validity window at the truncation edge"
        )
        warnings.warn(msg, RuntimeWarning, stacklevel=3)
        return (msg,)
    return ()


def spectral_kernel(
    ep: Endpoints, T, params: OscillatorParams, trunc: SpectralTruncation = DEFAULT_TRUNCATION
) -> KernelValue:
    """sum_n psi_n(qf) psi_n(q0) exp(-i E_n T / hbar) with first-order psi_n, E_n."""
    params.require_oscillator()
    t = _check_damped(T)
    x = params.omega * t
    eps = params.perturbative_scale

    def build(n):
        a, b = _tables(n, ep, params)
        psi_0 = a[: n + 1] + eps * _corrections(a, n)
        psi_f = b[: n + 1] + eps * _corrections(b, n)
        energy = 1 + energy_shift_array(n) * eps
        return {"k": psi_0 * psi_f * np.exp(-1j * (np.arange(n + 1) + 0.5) * x * energy)}

    sums, ok, n_used = _adaptive(build, trunc)
    notes = _validity_warning(params, n_used)
    return KernelValue(sums["k"], "spectral", certified=ok, n_used=n_used, warnings=notes)


def spectral_first_order(
    ep: Endpoints, T, params: OscillatorParams, trunc: SpectralTruncation = DEFAULT_TRUNCATION
) -> FirstOrderCoefficient:
    """Analytic beta-derivative of the level sum, taken term by term at beta = 0."""
    params.require_oscillator()
    t = _check_damped(T)
    x = params.omega * t
    mhw = params.m * params.hbar * params.omega

    def build(n):
        a, b = _tables(n, ep, params)
        a0, b0 = a[: n + 1], b[: n + 1]
        ph = _phase(n, x)
        prod = a0 * b0 * ph
        # d/dbeta of exp(-i (n + 1/2) x (1 + shift_n beta m hbar omega))
        energy_part = prod * (-1j * (np.arange(n + 1) + 0.5) * x * energy_shift_array(n)) * mhw
        wave_part = (_corrections(a, n) * b0 + a0 * _corrections(b, n)) * ph * mhw
        return {"k0": prod, "k1": energy_part + wave_part}

    sums, ok, n_used = _adaptive(build, trunc)
    return FirstOrderCoefficient(sums["k0"], sums["k1"], certified=ok, n_used=n_used)


@dataclass(frozen=True)
class SeriesDecomposition:
    """The J, K1, K2 level sums; J = j0 + beta j1 to first order."""

    j0: complex
    j1: complex
    k1: complex
    k2: complex
    j_full: complex
    certified: bool
    n_used: int

    def first_order(self, params: OscillatorParams) -> FirstOrderCoefficient:
        mhw = params.m * params.hbar * params.omega
        return FirstOrderCoefficient(
            self.j0, self.j1 + mhw * (self.k1 + self.k2), certified=self.certified, n_used=self.n_used
        )


def series_decomposition(
    ep: Endpoints, T, params: OscillatorParams, trunc: SpectralTruncation = DEFAULT_TRUNCATION
) -> SeriesDecomposition:
    params.require_oscillator()
    t = _check_damped(T)
    x = params.omega * t
    eps = params.perturbative_scale
    mhw = params.m * params.hbar * params.omega

    def pair(a, b, n, offset):
        # phi_n(qf) phi_{n+offset}(q0) + phi_n(q0) phi_{n+offset}(qf)
        return b[: n + 1] * _shifted(a, n, offset) + a[: n + 1] * _shifted(b, n, offset)

    def build(n):
        a, b = _tables(n, ep, params)
        levels = np.arange(n + 1, dtype=float)
        ph = _phase(n, x)
        diag = a[: n + 1] * b[: n + 1]
        shift = 3 * (2 * levels**2 + 2 * levels + 1) / (2 * (2 * levels + 1))
        c_up2 = (2 * levels + 3) * np.sqrt((levels + 1) * (levels + 2)) / 4
        c_dn2 = (2 * levels - 1) * np.sqrt(np.clip(levels * (levels - 1), 0, None)) / 4
        c_up4 = np.sqrt((levels + 1) * (levels + 2) * (levels + 3) * (levels + 4)) / 16
        c_dn4 = np.sqrt(np.clip(levels * (levels - 1) * (levels - 2) * (levels - 3), 0, None)) / 16
        return {
            "j0": diag * ph,
            "j1": diag * ph * (-1j * (levels + 0.5) * x * shift * mhw),
            "j_full": diag * np.exp(-1j * (levels + 0.5) * x * (1 + shift * eps)),
            "k1": (c_up2 * pair(a, b, n, 2) - c_dn2 * pair(a, b, n, -2)) * ph,
            "k2": (c_dn4 * pair(a, b, n, -4) - c_up4 * pair(a, b, n, 4)) * ph,
        }

    sums, ok, n_used = _adaptive(build, trunc)
    return SeriesDecomposition(
        sums["j0"], sums["j1"], sums["k1"], sums["k2"], sums["j_full"], ok, n_used
    )


def series_J(ep: Endpoints, T, params: OscillatorParams, trunc: SpectralTruncation = DEFAULT_TRUNCATION) -> complex:
    """J-sum with the beta-dependent energy phase kept in the exponent."""
    return series_decomposition(ep, T, params, trunc).j_full


def series_K1(ep: Endpoints, T, params: OscillatorParams, trunc: SpectralTruncation = DEFAULT_TRUNCATION) -> complex:
    return series_decomposition(ep, T, params, trunc).k1


def series_K2(ep: Endpoints, T, params: OscillatorParams, trunc: SpectralTruncation = DEFAULT_TRUNCATION) -> complex:
    return series_decomposition(ep, T, params, trunc).k2


def series_first_order(
    ep: Endpoints, T, params: OscillatorParams, trunc: SpectralTruncation = DEFAULT_TRUNCATION
) -> FirstOrderCoefficient:
    return series_decomposition(ep, T, params, trunc).first_order(params)
