"""Independent numerical oracles used across the test-suite."""

import math

import numpy as np


def richardson_derivative(f, x, h=1e-3, levels=4):
    """Central first difference with Richardson extrapolation in h^2."""
    table = [(f(x + h / 2**k) - f(x - h / 2**k)) / (2 * h / 2**k) for k in range(levels)]
    for j in range(1, levels):
        factor = 4.0**j
        table = [(factor * table[i + 1] - table[i]) / (factor - 1) for i in range(len(table) - 1)]
    return table[0]


def forward_richardson(f, h, levels=4):
    """f'(0) from one-sided differences (f(h) - f(0)) / h, extrapolated in h."""
    base = f(0.0)
    table = [(f(h / 2**k) - base) / (h / 2**k) for k in range(levels)]
    for j in range(1, levels):
        factor = 2.0**j
        table = [(factor * table[i + 1] - table[i]) / (factor - 1) for i in range(len(table) - 1)]
    return table[0]


def richardson_second_derivative(f, x, h=1e-2, levels=4):
    def central(step):
        return (f(x + step) - 2 * f(x) + f(x - step)) / step**2

    table = [central(h / 2**k) for k in range(levels)]
    for j in range(1, levels):
        factor = 4.0**j
        table = [(factor * table[i + 1] - table[i]) / (factor - 1) for i in range(len(table) - 1)]
    return table[0]


def phi_via_lgamma(n, x, m=1.0, omega=1.0, hbar=1.0):
    """phi_n from the raw Hermite polynomial with lgamma normalization (moderate n only)."""
    xi = math.sqrt(m * omega / hbar) * x
    h = np.polynomial.hermite.hermval(xi, [0] * n + [1])
    log_norm = -0.5 * (n * math.log(2) + math.lgamma(n + 1)) + 0.25 * math.log(m * omega / (math.pi * hbar))
    return h * math.exp(log_norm - 0.5 * xi * xi)


def gauss_hermite_overlap(f, g, nodes=200):
    """integral f(x) g(x) dx for functions decaying like exp(-x^2/2) each.

    Gauss-Hermite with weight exp(-x^2); the products phi_a phi_b carry exactly
    that weight, so the rule is exact for polynomial degree < 2 * nodes.
    """
    x, w = np.polynomial.hermite.hermgauss(nodes)
    return float(np.sum(w * np.exp(x * x) * f(x) * g(x)))
