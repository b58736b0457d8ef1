"""Dense symmetric eigensolver (cyclic Jacobi)."""

from __future__ import annotations

import math

import numpy as np

from .errors import InvalidParameters, NumericalFailure


def jacobi_eigenvalues(matrix, tol: float = 1e-13, max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix, in ascending order.

    Row-cyclic Jacobi rotations; converged when the off-diagonal Frobenius
    norm drops below ``tol`` times the full Frobenius norm.

    Raises
    ------
    NumericalFailure
        if ``max_sweeps`` sweeps do not reach the tolerance.
    """
    a = np.array(matrix, dtype=float, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidParameters("expected a square matrix")
    if not np.allclose(a, a.T, rtol=0, atol=1e-12 * max(1.0, np.abs(a).max(initial=0))):
        raise InvalidParameters("matrix is not symmetric")
    n = a.shape[0]
    scale = np.linalg.norm(a)
    if n < 2 or scale == 0.0:
        return np.sort(np.diag(a))

    for _ in range(max_sweeps):
        off = math.sqrt(2.0 * np.sum(np.triu(a, 1) ** 2))
        if off <= tol * scale:
            return np.sort(np.diag(a))
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :]
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
    raise NumericalFailure(f"Jacobi did not converge in {max_sweeps} sweeps")
