"""First-order perturbed oscillator levels and a brute-force oracle.

The unperturbed oscillator is deformed by the quartic kinetic term
(beta/m) p^4.  All wavefunction-mixing coefficients below multiply the
dimensionless combination beta*m*hbar*omega.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameters
from .linalg import jacobi_eigenvalues
from .params import OscillatorParams
from .specfun import phi_table

__all__ = [
    "OscillatorParams",
    "PerturbedLevel",
    "P4Matrix",
    "perturbed_level",
    "perturbed_energy",
    "energy_shift_coefficient",
    "perturbed_wavefunction",
    "p4_matrix_oracle",
    "hamiltonian_matrix",
    "diagonalize_oracle",
    "mixing_from_matrix",
    "mixing_arrays",
    "energy_shift_array",
]


@dataclass(frozen=True)
class PerturbedLevel:
    n: int
    energy: float
    c_plus2: float
    c_minus2: float
    c_plus4: float
    c_minus4: float

    def mixing(self) -> dict[int, float]:
        """Map level offset -> coefficient (zero entries dropped)."""
        items = {2: self.c_plus2, -2: self.c_minus2, 4: self.c_plus4, -4: self.c_minus4}
        return {k: v for k, v in items.items() if v != 0.0}


def energy_shift_coefficient(n: int) -> float:
    """Relative first-order energy factor 3(2n^2+2n+1)/(2(2n+1))."""
    return 3.0 * (2 * n * n + 2 * n + 1) / (2.0 * (2 * n + 1))


def mixing_coefficients(n: int) -> tuple[float, float, float, float]:
    """(c_plus2, c_minus2, c_plus4, c_minus4) for level ``n``."""
    c_plus2 = (2 * n + 3) * math.sqrt((n + 1) * (n + 2)) / 4.0
    c_minus2 = -(2 * n - 1) * math.sqrt(n * (n - 1)) / 4.0 if n >= 2 else 0.0
    c_plus4 = -math.sqrt((n + 1) * (n + 2) * (n + 3) * (n + 4)) / 16.0
    c_minus4 = math.sqrt(n * (n - 1) * (n - 2) * (n - 3)) / 16.0 if n >= 4 else 0.0
    return c_plus2, c_minus2, c_plus4, c_minus4


def perturbed_energy(n: int, params: OscillatorParams) -> float:
    params.require_oscillator()
    if n < 0:
        raise InvalidParameters("level index must be non-negative")
    hw = params.hbar * params.omega
    return (n + 0.5) * hw * (1.0 + energy_shift_coefficient(n) * params.perturbative_scale)


def perturbed_level(n: int, params: OscillatorParams) -> PerturbedLevel:
    return PerturbedLevel(n, perturbed_energy(n, params), *mixing_coefficients(n))


def perturbed_wavefunction(n: int, x, params: OscillatorParams):
    """psi_n(x) to first order in beta."""
    params.require_oscillator()
    if n < 0:
        raise InvalidParameters("level index must be non-negative")
    table = phi_table(n + 4, x, params)
    eps = params.perturbative_scale
    correction = 0.0
    for offset, coeff in perturbed_level(n, params).mixing().items():
        correction = correction + coeff * table[n + offset]
    value = table[n] + eps * correction
    return value if np.ndim(x) else float(value)


@dataclass(frozen=True)
class P4Matrix:
    """p^4 in the truncated oscillator basis.

    ``values`` rows/columns at index >= ``n_reliable`` are contaminated by
    the truncation.
    """

    values: np.ndarray
    n_reliable: int

    @property
    def n_basis(self) -> int:
        return self.values.shape[0]


def p4_matrix_oracle(n_basis: int, params: OscillatorParams | None = None) -> P4Matrix:
    """Fourth power of the momentum matrix in the first ``n_basis`` levels.

    p = i sqrt(m hbar omega / 2) (a^dagger - a); the real antisymmetric
    matrix p/i is built and p^4 = (p/i)^4.
    """
    params = (params or OscillatorParams()).require_oscillator()
    if n_basis < 8:
        raise InvalidParameters("n_basis must be at least 8")
    k = np.arange(1, n_basis, dtype=float)
    p_over_i = np.diag(np.sqrt(k), -1) - np.diag(np.sqrt(k), 1)
    p_over_i *= math.sqrt(params.m * params.hbar * params.omega / 2.0)
    p2 = p_over_i @ p_over_i
    return P4Matrix(p2 @ p2, n_basis - 4)


def hamiltonian_matrix(params: OscillatorParams, n_basis: int) -> np.ndarray:
    params.require_oscillator()
    diag = (np.arange(n_basis) + 0.5) * params.hbar * params.omega
    h = np.diag(diag)
    if params.beta:
        h = h + (params.beta / params.m) * p4_matrix_oracle(n_basis, params).values
    return h


def diagonalize_oracle(
    params: OscillatorParams, n_basis: int, certified_only: bool = True
) -> np.ndarray:
    """Ascending eigenvalues of the truncated quartic-deformed Hamiltonian.

    Only the lowest ``n_basis // 2`` values are certified; those are returned
    unless ``certified_only`` is false.
    """
    if n_basis < 16:
        raise InvalidParameters("n_basis must be at least 16")
    values = jacobi_eigenvalues(hamiltonian_matrix(params, n_basis))
    return values[: n_basis // 2] if certified_only else values


def mixing_from_matrix(n: int, p4: P4Matrix, params: OscillatorParams | None = None) -> dict[int, float]:
    """Standard first-order mixing <k|V|n>/(E_n - E_k), in units of beta*m*hbar*omega.

    With V = (beta/m) p^4 and E_n - E_k = (n-k) hbar omega the beta cancels,
    leaving <k|p^4|n> / ((n-k) m^2 hbar^2 omega^2) when p4 is built with the
    same params.
    """
    params = params or OscillatorParams()
    if n + 4 >= p4.n_reliable:
        raise InvalidParameters("level too close to the truncation edge")
    scale = (params.m * params.hbar * params.omega) ** 2
    out = {}
    for k in range(max(0, n - 4), n + 5):
        if k == n:
            continue
        element = p4.values[k, n]
        if element != 0.0:
            out[k - n] = element / ((n - k) * scale)
    return out


def mixing_arrays(n_max: int) -> dict[int, np.ndarray]:
    """Vectorized mixing coefficients for levels 0..n_max, keyed by offset."""
    n = np.arange(n_max + 1, dtype=float)
    return {
        2: (2 * n + 3) * np.sqrt((n + 1) * (n + 2)) / 4.0,
        -2: -(2 * n - 1) * np.sqrt(np.clip(n * (n - 1), 0, None)) / 4.0,
        4: -np.sqrt((n + 1) * (n + 2) * (n + 3) * (n + 4)) / 16.0,
        -4: np.sqrt(np.clip(n * (n - 1) * (n - 2) * (n - 3), 0, None)) / 16.0,
    }


def energy_shift_array(n_max: int) -> np.ndarray:
    n = np.arange(n_max + 1, dtype=float)
    return 3.0 * (2 * n * n + 2 * n + 1) / (2.0 * (2 * n + 1))
