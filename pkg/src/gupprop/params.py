"""Physical parameter container."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

from .errors import InvalidParameters

#: beta*m*hbar*omega above which first-order results are flagged.
PERTURBATIVE_SCALE = 0.1


@dataclass(frozen=True)
class OscillatorParams:
    """Mass, angular frequency, reduced Planck constant and GUP parameter.

    ``beta`` carries units of (momentum)^-2.  ``omega == 0`` is allowed for
    free-particle formulas; oscillator formulas call :meth:`require_oscillator`.
    """

    m: float = 1.0
    omega: float = 1.0
    hbar: float = 1.0
    beta: float = 0.0

    def __post_init__(self):
        for name in ("m", "omega", "hbar", "beta"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InvalidParameters(f"{name} must be finite, got {value!r}")
        if self.m <= 0 or self.hbar <= 0:
            raise InvalidParameters("m and hbar must be positive")
        if self.omega < 0:
            raise InvalidParameters("omega must be non-negative")
        if self.beta < 0:
            raise InvalidParameters("beta must be non-negative")
        if self.perturbative_scale > PERTURBATIVE_SCALE:
            warnings.warn(
                f"beta*m*hbar*omega = {self.perturbative_scale:.3g} exceeds "
                f"{PERTURBATIVE_SCALE}; first-order results are unreliable",
                RuntimeWarning,
                stacklevel=3,
            )

    @property
    def perturbative_scale(self) -> float:
        """The dimensionless expansion parameter beta*m*hbar*omega."""
        return self.beta * self.m * self.hbar * self.omega

    @property
    def length_scale(self) -> float:
        """Inverse oscillator length sqrt(m omega / hbar)."""
        return math.sqrt(self.m * self.omega / self.hbar)

    def require_oscillator(self) -> "OscillatorParams":
        if self.omega <= 0:
            raise InvalidParameters("oscillator formulas need omega > 0")
        return self

    def with_beta(self, beta: float) -> "OscillatorParams":
        return replace(self, beta=beta)

    def as_dict(self) -> dict:
        return {"m": self.m, "omega": self.omega, "hbar": self.hbar, "beta": self.beta}
