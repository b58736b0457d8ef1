"""First-order GUP oscillator propagators: spectral sums, closed forms and checks."""

__version__ = "0.1.0"

from .errors import (
    CausticError,
    DomainError,
    GUPError,
    InvalidParameters,
    NonConvergentConfiguration,
    NumericalFailure,
    SolverError,
)
from .params import OscillatorParams
from .propagator import (
    ComplexDuration,
    Endpoints,
    FirstOrderCoefficient,
    KernelValue,
    SpectralTruncation,
    corrected_kernel,
    first_order_of,
    free_gup_kernel,
    prd_claim_kernel,
    spectral_first_order,
    spectral_kernel,
)
