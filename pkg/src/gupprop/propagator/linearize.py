"""Uniform access to the first-order coefficient of every representation."""

from __future__ import annotations

from ..errors import InvalidParameters
from ..params import OscillatorParams
from . import closed, spectral
from .types import Endpoints, FirstOrderCoefficient, SpectralTruncation

LINEARIZABLE = (
    "spectral",
    "corrected",
    "prd_claim",
    "prd_claim_S0_only",
    "free_gup",
    "series_decomposition",
    "closed_form",
    "tilde",
)


def first_order_of(
    rep: str,
    ep: Endpoints,
    T,
    params: OscillatorParams,
    trunc: SpectralTruncation | None = None,
) -> FirstOrderCoefficient:
    """(k0, k1) for representation ``rep``.

    ``prd_claim`` reads the published S_cl as S0 + beta S1; ``prd_claim_S0_only``
    reads it as S0.  ``closed_form`` combines the F/G closed forms of J and K1
    with tilde-K2; ``tilde`` uses the explicit tilde expressions throughout.
    """
    trunc = trunc or spectral.DEFAULT_TRUNCATION
    if rep == "corrected":
        return closed.corrected_first_order(ep, T, params)
    if rep == "prd_claim":
        return closed.prd_claim_first_order(ep, T, params, "S0_plus_beta_S1")
    if rep == "prd_claim_S0_only":
        return closed.prd_claim_first_order(ep, T, params, "S0_only")
    if rep == "free_gup":
        return closed.free_gup_first_order(ep, T, params)
    if rep == "spectral":
        return spectral.spectral_first_order(ep, T, params, trunc)
    if rep == "series_decomposition":
        return spectral.series_first_order(ep, T, params, trunc)
    if rep == "closed_form":
        j = closed.closedform_J_first_order(ep, T, params)
        mhw = params.m * params.hbar * params.omega
        k_sum = closed.closedform_K1(ep, T, params) + closed.tilde_scale(ep, T, params) * closed.tilde_K2(
            ep, T, params
        )
        return FirstOrderCoefficient(j.k0, j.k1 + mhw * k_sum)
    if rep == "tilde":
        return closed.tilde_first_order(ep, T, params)
    raise InvalidParameters(f"representation {rep!r} has no analytic linearization")
