"""Propagator representations and their first-order-in-beta comparison."""

from .actions import f_factor, oscillator_prefactor, s0, s1
from .closed import (
    ACTION_VARIANTS,
    closedform_J,
    closedform_J_first_order,
    closedform_K1,
    corrected_first_order,
    corrected_kernel,
    free_gup_first_order,
    free_gup_kernel,
    mehler_kernel,
    prd_bracket_coefficient,
    prd_claim_first_order,
    prd_claim_kernel,
    tilde_J,
    tilde_J_first_order,
    tilde_K1,
    tilde_K2,
    tilde_first_order,
    tilde_scale,
)
from .linearize import LINEARIZABLE, first_order_of
from .spectral import (
    DEFAULT_TRUNCATION,
    SeriesDecomposition,
    series_decomposition,
    series_first_order,
    series_J,
    series_K1,
    series_K2,
    spectral_first_order,
    spectral_kernel,
)
from .types import (
    REPRESENTATIONS,
    ComplexDuration,
    Endpoints,
    FirstOrderCoefficient,
    KernelValue,
    SpectralTruncation,
)
