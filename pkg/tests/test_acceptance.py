"""Acceptance criteria A1-A8, one test each.

Each test prints the criterion's PASS/FAIL line (tolerance, runtime and
budget included) straight to the terminal, bypassing capture.
"""

import pytest

from gupprop import verification


@pytest.fixture(scope="module")
def first_order_pair():
    return verification.check_A1_A2()


def report(capsys, result):
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.detail


def test_A1_corrected_matches_spectral(first_order_pair, capsys):
    a1, _ = first_order_pair
    assert a1.detail["tolerance"] == 1e-3
    report(capsys, a1)


def test_A2_published_differs_from_spectral(first_order_pair, capsys):
    _, a2 = first_order_pair
    for variant in ("prd_S0_plus_beta_S1", "prd_S0_only"):
        assert a2.detail[variant]["fraction_separated"] >= 0.9
    report(capsys, a2)


def test_A3_series_closed_tilde_identities(capsys):
    report(capsys, verification.check_A3())


def test_A4_free_limit(capsys):
    report(capsys, verification.check_A4())


def test_A5_spectrum_against_diagonalization(capsys):
    report(capsys, verification.check_A5())


def test_A6_extended_mehler(capsys):
    report(capsys, verification.check_A6())


def test_A7_classical_action(capsys):
    report(capsys, verification.check_A7())


def test_A8_beta_zero_anchor(capsys):
    report(capsys, verification.check_A8())
