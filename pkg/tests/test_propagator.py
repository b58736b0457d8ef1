import cmath
import math
import warnings
from itertools import product

import pytest

from gupprop.errors import CausticError, InvalidParameters, NonConvergentConfiguration
from gupprop.params import OscillatorParams
from gupprop.propagator import (
    ComplexDuration,
    Endpoints,
    KernelValue,
    SpectralTruncation,
    closedform_J,
    closedform_K1,
    corrected_kernel,
    first_order_of,
    free_gup_kernel,
    mehler_kernel,
    prd_claim_kernel,
    series_decomposition,
    series_K1,
    series_K2,
    spectral_first_order,
    spectral_kernel,
    tilde_J,
    tilde_K1,
    tilde_K2,
    tilde_scale,
)
from gupprop.verification import semigroup_residual

from oracles import forward_richardson

EP = Endpoints(0.3, 0.7)
GENERIC = ComplexDuration(1.0, 0.05)


def rel(a, b):
    return abs(a - b) / abs(b)


def test_spectral_ground_example(unit):
    T = 1 - 0.1j
    value = spectral_kernel(Endpoints(0.0, 0.0), T, unit, SpectralTruncation(n_max=300))
    assert value.certified
    assert rel(value.amplitude, cmath.sqrt(1 / (2j * math.pi * cmath.sin(T)))) < 1e-8


GRID_Q = (-0.8, 0.3, 0.7)
GRID_X = (0.4, 1.5, 2.6)


@pytest.mark.parametrize("q0,qf,x", list(product(GRID_Q, GRID_Q, GRID_X)))
def test_beta_zero_universality(q0, qf, x):
    params = OscillatorParams(omega=1.3)
    ep = Endpoints(q0, qf)
    T = ComplexDuration(x / 1.3, 0.1)
    reference = mehler_kernel(ep, T, params)
    values = [
        spectral_kernel(ep, T, params).amplitude,
        corrected_kernel(ep, T, params).amplitude,
        prd_claim_kernel(ep, T, params).amplitude,
        prd_claim_kernel(ep, T, params, "S0_only").amplitude,
        closedform_J(ep, T, params),
    ]
    for v in values:
        assert rel(v, reference) < 1e-8


REPS = ("spectral", "corrected", "prd_claim", "prd_claim_S0_only", "free_gup",
        "series_decomposition", "closed_form", "tilde")


@pytest.mark.parametrize("rep", REPS)
def test_first_order_endpoint_symmetry(rep):
    params = OscillatorParams(omega=0.9, m=1.1)
    ep = Endpoints(-0.8, 0.3)
    a = first_order_of(rep, ep, GENERIC, params)
    b = first_order_of(rep, ep.swapped(), GENERIC, params)
    assert a.k0 == b.k0
    assert a.k1 == b.k1


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_kernel_endpoint_symmetry():
    params = OscillatorParams(omega=1.2, beta=1e-4)
    ep = Endpoints(0.7, -0.8)
    for fn in (spectral_kernel, corrected_kernel, prd_claim_kernel, free_gup_kernel):
        assert fn(ep, GENERIC, params).amplitude == fn(ep.swapped(), GENERIC, params).amplitude


def test_spectral_first_order_versus_beta_differences():
    params = OscillatorParams()
    coeff = spectral_first_order(EP, GENERIC, params)
    assert coeff.certified
    assert rel(coeff.k0, mehler_kernel(EP, GENERIC, params)) < 1e-8

    def kernel(beta):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            return spectral_kernel(EP, GENERIC, params.with_beta(beta)).amplitude

    assert rel(coeff.k1, forward_richardson(kernel, 1e-6)) < 1e-5


def test_decomposition_matches_spectral_first_order():
    params = OscillatorParams(omega=1.6)
    T = ComplexDuration(0.6, 0.03)
    direct = spectral_first_order(EP, T, params)
    split = series_decomposition(EP, T, params).first_order(params)
    assert rel(split.k0, direct.k0) < 1e-10
    assert rel(split.k1, direct.k1) < 1e-6


def test_k2_sum_parity_at_origin():
    # with q0 = qf = 0 only even levels carry weight, so truncating at an odd
    # level adds nothing
    params = OscillatorParams()
    T = ComplexDuration(1.0, 0.2)
    ep = Endpoints(0.0, 0.0)
    a = series_K2(ep, T, params, SpectralTruncation.fixed(200))
    b = series_K2(ep, T, params, SpectralTruncation.fixed(201))
    assert a == b


def test_spectral_odd_levels_vanish_at_origin():
    params = OscillatorParams()
    T = ComplexDuration(1.0, 0.2)
    ep = Endpoints(0.0, 0.5)
    a = spectral_kernel(ep, T, params, SpectralTruncation.fixed(60)).amplitude
    b = spectral_kernel(ep, T, params, SpectralTruncation.fixed(61)).amplitude
    assert a == b


@pytest.mark.parametrize("omega,t_real,q0,qf", [(0.7, 2.2, -0.8, 0.7), (1.0, 1.0, 0.3, 0.7), (1.6, 0.6, 0.7, 0.3)])
def test_series_closed_tilde_identities(omega, t_real, q0, qf):
    params = OscillatorParams(omega=omega, beta=2e-4)
    ep = Endpoints(q0, qf)
    T = ComplexDuration(t_real, 0.1)
    scale = tilde_scale(ep, T, params)
    assert rel(series_K1(ep, T, params), closedform_K1(ep, T, params)) < 1e-8
    assert rel(closedform_K1(ep, T, params), scale * tilde_K1(ep, T, params)) < 1e-8
    assert rel(series_K2(ep, T, params), scale * tilde_K2(ep, T, params)) < 1e-8
    decomposition = series_decomposition(ep, T, params)
    assert rel(decomposition.first_order(params).k1, first_order_of("closed_form", ep, T, params).k1) < 1e-8
    assert rel(closedform_J(ep, T, params), scale * tilde_J(ep, T, params)) < 1e-8


def test_tilde_J_is_one_at_beta_zero(unit):
    assert tilde_J(EP, GENERIC, unit) == pytest.approx(1.0, abs=1e-15)


def test_main_claim_at_generic_point():
    params = OscillatorParams()
    spectral = first_order_of("spectral", EP, GENERIC, params)
    corrected = first_order_of("corrected", EP, GENERIC, params)
    assert rel(corrected.k1, spectral.k1) < 1e-3
    residual = rel(corrected.k1, spectral.k1)
    for variant in ("prd_claim", "prd_claim_S0_only"):
        published = first_order_of(variant, EP, GENERIC, params)
        assert rel(published.k1, spectral.k1) >= max(10 * residual, 1e-1)


def test_first_order_coincides_in_free_limit():
    params = OscillatorParams(omega=1e-5)
    T = ComplexDuration(1.0)
    corrected = first_order_of("corrected", EP, T, params)
    published = first_order_of("prd_claim", EP, T, params)
    free = first_order_of("free_gup", EP, T, params)
    assert rel(corrected.k1, free.k1) < 1e-7
    assert rel(published.k1, free.k1) < 1e-4


def test_free_gup_examples():
    params = OscillatorParams(m=1.5, hbar=0.7, omega=0.0, beta=1e-3)
    T = 0.8
    same = Endpoints(0.4, 0.4)
    expected = (1 + 3j * 1e-3 * 0.7 * 1.5 / T) * cmath.sqrt(1.5 / (2j * math.pi * 0.7 * T))
    assert rel(free_gup_kernel(same, T, params).amplitude, expected) < 1e-15
    plain = free_gup_kernel(EP, T, params.with_beta(0.0)).amplitude
    d = EP.q0 - EP.qf
    schrodinger = cmath.sqrt(1.5 / (2j * math.pi * 0.7 * T)) * cmath.exp(1j * 1.5 * d * d / (2 * 0.7 * T))
    assert rel(plain, schrodinger) < 1e-15


def test_corrected_free_limit():
    params = OscillatorParams(omega=1e-4, beta=1e-3)
    T = ComplexDuration(1.0)
    assert rel(corrected_kernel(EP, T, params).amplitude, free_gup_kernel(EP, T, params).amplitude) < 1e-6


def test_spectral_needs_damping(unit):
    with pytest.raises(NonConvergentConfiguration):
        spectral_kernel(EP, ComplexDuration(1.0), unit)
    with pytest.raises(NonConvergentConfiguration):
        spectral_first_order(EP, 1.0, unit)


def test_uncertified_tail_is_flagged(unit):
    value = spectral_kernel(EP, ComplexDuration(1.0, 0.002), unit, SpectralTruncation.fixed(50))
    assert not value.certified
    assert value.n_used == 50


def test_truncation_grows_until_certified(unit):
    value = spectral_kernel(EP, ComplexDuration(1.0, 0.02), unit, SpectralTruncation(n_max=50))
    assert value.certified
    assert value.n_used > 50


def test_validity_warning():
    params = OscillatorParams(beta=1e-3)
    with pytest.warns(RuntimeWarning):
        value = spectral_kernel(EP, GENERIC, params)
    assert value.warnings


def test_caustic_guards(unit):
    T = ComplexDuration(math.pi)
    for fn in (corrected_kernel, prd_claim_kernel):
        with pytest.raises(CausticError):
            fn(EP, T, unit)
    with pytest.raises(CausticError):
        closedform_J(EP, T, unit)


def test_value_type_validation():
    with pytest.raises(InvalidParameters):
        ComplexDuration(0.0, 0.1)
    with pytest.raises(InvalidParameters):
        ComplexDuration(1.0, -0.1)
    with pytest.raises(InvalidParameters):
        SpectralTruncation(n_max=4)
    with pytest.raises(InvalidParameters):
        KernelValue(1.0, "nonsense")
    with pytest.raises(InvalidParameters):
        first_order_of("nonsense", EP, GENERIC, OscillatorParams())
    with pytest.raises(InvalidParameters):
        prd_claim_kernel(EP, GENERIC, OscillatorParams(), "S1_only")


def test_semigroup():
    assert semigroup_residual(1.0, (0.6, 0.12), (1.0, 0.2), 0.3, 0.7) < 1e-6
