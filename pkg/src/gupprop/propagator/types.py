"""Value types shared by the propagator representations."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..errors import InvalidParameters

REPRESENTATIONS = ("spectral", "corrected", "prd_claim", "free_gup", "series_decomposition")


@dataclass(frozen=True)
class ComplexDuration:
    """Elapsed time evaluated at T = t_real - i*tau."""

    t_real: float
    tau: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.t_real) and self.t_real > 0):
            raise InvalidParameters("t_real must be positive")
        if not (math.isfinite(self.tau) and self.tau >= 0):
            raise InvalidParameters("tau must be non-negative")

    @property
    def value(self) -> complex:
        return complex(self.t_real, -self.tau)


@dataclass(frozen=True)
class Endpoints:
    q0: float
    qf: float

    def __post_init__(self):
        if not (math.isfinite(self.q0) and math.isfinite(self.qf)):
            raise InvalidParameters("endpoints must be finite")

    def swapped(self) -> "Endpoints":
        return Endpoints(self.qf, self.q0)


@dataclass(frozen=True)
class SpectralTruncation:
    """Truncation of the level sums.

    ``n_max`` is the first truncation tried; while the tail test fails the
    truncation doubles, up to ``n_limit``.  Set ``n_limit == n_max`` for a
    hard cutoff.
    """

    n_max: int = 400
    tail_tol: float = 1e-10
    n_limit: int = 12800
    tail_terms: int = 5

    def __post_init__(self):
        if self.n_max < 8:
            raise InvalidParameters("n_max must be at least 8")
        if not self.tail_tol > 0:
            raise InvalidParameters("tail_tol must be positive")
        if self.n_limit < self.n_max:
            raise InvalidParameters("n_limit must be >= n_max")

    @classmethod
    def fixed(cls, n_max: int, tail_tol: float = 1e-10) -> "SpectralTruncation":
        return cls(n_max=n_max, tail_tol=tail_tol, n_limit=n_max)


@dataclass(frozen=True)
class KernelValue:
    amplitude: complex
    representation: str
    certified: bool = True
    n_used: int | None = None
    warnings: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.representation not in REPRESENTATIONS:
            raise InvalidParameters(f"unknown representation {self.representation!r}")


@dataclass(frozen=True)
class FirstOrderCoefficient:
    """K = k0 + beta * k1 + O(beta^2)."""

    k0: complex
    k1: complex
    certified: bool = True
    n_used: int | None = None

    def at(self, beta: float) -> complex:
        return self.k0 + beta * self.k1
