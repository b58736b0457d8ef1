"""Closed-form propagators and the intermediate J, K1, K2 kernels."""

from __future__ import annotations

import math

import numpy as np

from .. import kernels
from ..errors import InvalidParameters
from ..params import OscillatorParams
from . import actions
from .actions import as_time, guarded_sin
from .types import Endpoints, FirstOrderCoefficient, KernelValue

ACTION_VARIANTS = ("S0_plus_beta_S1", "S0_only")


def mehler_kernel(ep: Endpoints, T, params: OscillatorParams) -> complex:
    """beta = 0 oscillator kernel (omega -> 0 safe)."""
    return actions.oscillator_prefactor(T, params) * np.exp(1j * actions.s0(ep, T, params) / params.hbar)


# -- corrected propagator -----------------------------------------------------


def corrected_first_order(ep: Endpoints, T, params: OscillatorParams) -> FirstOrderCoefficient:
    """k0 and k1 = k0 (f + i S1 / hbar)."""
    k0 = mehler_kernel(ep, T, params)
    factor = actions.f_factor(ep, T, params) + 1j * actions.s1(ep, T, params) / params.hbar
    return FirstOrderCoefficient(k0, k0 * factor)


def corrected_kernel(ep: Endpoints, T, params: OscillatorParams) -> KernelValue:
    beta, hbar = params.beta, params.hbar
    pref = actions.oscillator_prefactor(T, params)
    bracket = 1 + beta * actions.f_factor(ep, T, params)
    action = actions.s0(ep, T, params) + beta * actions.s1(ep, T, params)
    return KernelValue(complex(pref * bracket * np.exp(1j * action / hbar)), "corrected")


# -- disputed published propagator -------------------------------------------


def prd_bracket_coefficient(ep: Endpoints, T, params: OscillatorParams) -> complex:
    """Coefficient of beta inside the published prefactor bracket."""
    t = as_time(T)
    m, hbar = params.m, params.hbar
    rate = (ep.qf - ep.q0) / t
    return complex(
        3j * hbar * m / t - 6 * m * m * rate * rate - 0.75 * m * hbar * actions.omega_t_cot(T, params)
    )


def _check_variant(action_variant: str):
    if action_variant not in ACTION_VARIANTS:
        raise InvalidParameters(f"action_variant must be one of {ACTION_VARIANTS}")


def prd_claim_first_order(
    ep: Endpoints, T, params: OscillatorParams, action_variant: str = "S0_plus_beta_S1"
) -> FirstOrderCoefficient:
    _check_variant(action_variant)
    k0 = mehler_kernel(ep, T, params)
    factor = prd_bracket_coefficient(ep, T, params)
    if action_variant == "S0_plus_beta_S1":
        factor += 1j * actions.s1(ep, T, params) / params.hbar
    return FirstOrderCoefficient(k0, k0 * factor)


def prd_claim_kernel(
    ep: Endpoints, T, params: OscillatorParams, action_variant: str = "S0_plus_beta_S1"
) -> KernelValue:
    """The published propagator, with S_cl read as S0 + beta S1 or as S0 alone."""
    _check_variant(action_variant)
    beta, hbar = params.beta, params.hbar
    pref = actions.oscillator_prefactor(T, params)
    bracket = 1 + beta * prd_bracket_coefficient(ep, T, params)
    action = actions.s0(ep, T, params)
    if action_variant == "S0_plus_beta_S1":
        action += beta * actions.s1(ep, T, params)
    return KernelValue(complex(pref * bracket * np.exp(1j * action / hbar)), "prd_claim")


# -- free particle ------------------------------------------------------------


def free_gup_first_order(ep: Endpoints, T, params: OscillatorParams) -> FirstOrderCoefficient:
    t = as_time(T)
    m, hbar = params.m, params.hbar
    d = ep.q0 - ep.qf
    k0 = np.sqrt(m / (2j * math.pi * hbar * t)) * np.exp(1j * m * d * d / (2 * hbar * t))
    factor = 3j * hbar * m / t - 6 * m * m * d * d / (t * t) - 1j * m**3 * d**4 / (hbar * t**3)
    return FirstOrderCoefficient(complex(k0), complex(k0 * factor))


def free_gup_kernel(ep: Endpoints, T, params: OscillatorParams) -> KernelValue:
    t = as_time(T)
    m, hbar, beta = params.m, params.hbar, params.beta
    d = ep.q0 - ep.qf
    pref = np.sqrt(m / (2j * math.pi * hbar * t))
    bracket = 1 + 3j * beta * hbar * m / t - 6 * beta * m * m * d * d / (t * t)
    phase = 1j * m * d * d / (2 * hbar * t) * (1 - 2 * beta * m * m * (d / t) ** 2)
    return KernelValue(complex(pref * bracket * np.exp(phase)), "free_gup")


# -- J, K1, K2 via F and G ----------------------------------------------------


def closedform_J_first_order(ep: Endpoints, T, params: OscillatorParams) -> FirstOrderCoefficient:
    """J = J0 + beta J1 from the differential operator acting on F(mu)."""
    params.require_oscillator()
    mu = actions.angle(T, params)
    q0, qf = ep.q0, ep.qf
    norm = math.sqrt(params.m * params.omega / (math.pi * params.hbar)) * np.exp(-0.5j * mu)
    f = kernels.F_of_mu(mu, q0, qf, params)
    d1, d2 = kernels.F_derivatives(mu, q0, qf, params)
    # beta m hbar omega^2 T per unit beta
    rate = params.m * params.hbar * params.omega * mu
    j1 = rate * (-0.75j * f + 1.5j * d2 + 1.5 * d1)
    return FirstOrderCoefficient(complex(norm * f), complex(norm * j1))


def closedform_J(ep: Endpoints, T, params: OscillatorParams) -> complex:
    return closedform_J_first_order(ep, T, params).at(params.beta)


def closedform_K1(ep: Endpoints, T, params: OscillatorParams) -> complex:
    params.require_oscillator()
    mu = actions.angle(T, params)
    g = kernels.G_of_mu(mu, ep.q0, ep.qf, params)
    dg = kernels.G_derivative(mu, ep.q0, ep.qf, params)
    norm = np.sqrt(params.m * params.omega / (2j * math.pi * params.hbar))
    return complex(-0.5 * norm * np.exp(-1.5j * mu) * np.sin(mu) * (2j * dg + 3 * g))


# -- tilde forms --------------------------------------------------------------


def tilde_J_first_order(ep: Endpoints, T, params: OscillatorParams) -> complex:
    """Coefficient of beta in tilde-J (tilde-J = 1 + beta * this)."""
    params.require_oscillator()
    t = as_time(T)
    x = params.omega * t
    s = guarded_sin(x)
    c = np.cos(x)
    m, w, hbar = params.m, params.omega, params.hbar
    q0, qf = ep.q0, ep.qf
    a, b = q0 * q0 + qf * qf, q0 * qf
    bracket = (
        -3j * hbar * m * w * a * np.sin(2 * x)
        + (m * w) ** 2 * (a - 2 * b * c) ** 2
        + 4j * hbar * m * w * s * (2 + np.cos(2 * x)) * b
        - hbar**2 * s * s * (2 + np.cos(2 * x))
    )
    return complex(-3j * m * w * w * t / (8 * hbar * s**4) * bracket)


def tilde_J(ep: Endpoints, T, params: OscillatorParams) -> complex:
    return 1 + params.beta * tilde_J_first_order(ep, T, params)


def tilde_K1(ep: Endpoints, T, params: OscillatorParams) -> complex:
    params.require_oscillator()
    x = actions.angle(T, params)
    s = guarded_sin(x)
    c = np.cos(x)
    m, w, hbar = params.m, params.omega, params.hbar
    q0, qf = ep.q0, ep.qf
    a, b = q0 * q0 + qf * qf, q0 * qf
    bracket = (
        -4 * (m * w) ** 2 * b * a * (3 + np.cos(2 * x))
        + 3 * hbar**2 * (np.cos(3 * x) - c)
        + 4 * m * w * c * (m * w * (q0**4 + 6 * b * b + qf**4) + 12j * hbar * b * s)
        - 3j * hbar * m * w * a * (5 * s + np.sin(3 * x))
    )
    return complex(-1j / (8 * hbar**2 * s**3) * bracket)


def tilde_K2(ep: Endpoints, T, params: OscillatorParams) -> complex:
    params.require_oscillator()
    x = actions.angle(T, params)
    s = guarded_sin(x)
    c = np.cos(x)
    c2 = np.cos(2 * x)
    m, w, hbar = params.m, params.omega, params.hbar
    q0, qf = ep.q0, ep.qf
    a, b = q0 * q0 + qf * qf, q0 * qf
    inner = (
        m * w * c2 * (q0**4 + qf**4)
        - 4 * m * w * b * a * c
        - 6j * hbar * s * (a * c - 2 * b)
    )
    bracket = 12 * (m * w) ** 2 * b * b - 3 * hbar**2 * (1 - c2) + 2 * m * w * inner
    return complex(-1j * c / (16 * hbar**2 * s**3) * bracket)


def tilde_first_order(ep: Endpoints, T, params: OscillatorParams) -> FirstOrderCoefficient:
    """k1 assembled from the tilde forms: k0 [tilde-J_1 + m hbar omega (tilde-K1 + tilde-K2)]."""
    k0 = mehler_kernel(ep, T, params)
    mhw = params.m * params.hbar * params.omega
    factor = tilde_J_first_order(ep, T, params) + mhw * (tilde_K1(ep, T, params) + tilde_K2(ep, T, params))
    return FirstOrderCoefficient(k0, k0 * factor)


def tilde_scale(ep: Endpoints, T, params: OscillatorParams) -> complex:
    """The common factor sqrt(m omega / 2 pi i hbar sin omega T) e^{i S0 / hbar}."""
    return mehler_kernel(ep, T, params)
