"""
Cyclic Jacobi eigensolver for small dense symmetric matrices.

Pairs are visited in round-robin (parallel) order: each round rotates
n/2 disjoint index pairs at once, so a whole round is a handful of
vectorized column and row updates instead of n/2 scalar rotations.
"""
import logging

import numpy as np
from django.conf import settings

from core.exceptions import ConvergenceError, ShapeError

logger = logging.getLogger(__name__)


def _round_robin(n):
    """Yields (p, q) index arrays for the n - 1 rounds covering every pair once (n even)."""
    players = list(range(n))
    half = n // 2
    for _ in range(n - 1):
        p = np.array(players[:half])
        q = np.array(players[half:][::-1])
        yield np.minimum(p, q), np.maximum(p, q)
        players = [players[0], players[-1]] + players[1:-1]


def _off_norm(a):
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _rotate(a, v, p, q):
    app, aqq, apq = a[p, p], a[q, q], a[p, q]
    active = apq != 0.0

    tau = np.zeros_like(apq)
    tau[active] = (aqq[active] - app[active]) / (2.0 * apq[active])
    t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
    t[~active] = 0.0
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c

    cols_p, cols_q = a[:, p].copy(), a[:, q].copy()
    a[:, p] = cols_p * c - cols_q * s
    a[:, q] = cols_p * s + cols_q * c

    rows_p, rows_q = a[p, :].copy(), a[q, :].copy()
    a[p, :] = c[:, None] * rows_p - s[:, None] * rows_q
    a[q, :] = s[:, None] * rows_p + c[:, None] * rows_q

    a[p, q] = 0.0
    a[q, p] = 0.0

    vp, vq = v[:, p].copy(), v[:, q].copy()
    v[:, p] = vp * c - vq * s
    v[:, q] = vp * s + vq * c


def jacobi_eigh(matrix, threshold=None, max_sweeps=None):
    """
    Returns (values, vectors) with ascending eigenvalues and orthonormal
    eigenvectors as columns.

    Stops once the off-diagonal Frobenius norm falls below `threshold`
    relative to the matrix norm, or when a sweep no longer reduces it
    (rounding floor). Raises ConvergenceError after `max_sweeps` sweeps.
    """
    threshold = settings.GREENS_JACOBI_THRESHOLD if threshold is None else threshold
    max_sweeps = settings.GREENS_JACOBI_MAX_SWEEPS if max_sweeps is None else max_sweeps

    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ShapeError(f"Expected a square matrix, got shape {matrix.shape}.")

    n = matrix.shape[0]
    if n == 1:
        return matrix.diagonal().copy(), np.ones((1, 1))

    # Odd sizes get a decoupled dummy index; its rotations are all identities.
    size = n + (n % 2)
    a = np.zeros((size, size))
    a[:n, :n] = (matrix + matrix.T) / 2.0
    v = np.eye(size)

    scale = max(float(np.linalg.norm(a)), 1.0)
    off = _off_norm(a)
    sweeps = 0
    while off > threshold * scale:
        if sweeps >= max_sweeps:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps (off-norm {off:.3e})."
            )
        for p, q in _round_robin(size):
            _rotate(a, v, p, q)
        sweeps += 1

        previous, off = off, _off_norm(a)
        if off >= previous and off <= 1e-10 * scale:
            logger.debug(f"Jacobi stalled at off-norm {off:.3e} after {sweeps} sweeps")
            break

    logger.debug(f"Jacobi n={n} converged in {sweeps} sweeps")

    values = a.diagonal()[:n].copy()
    vectors = v[:n, :n].copy()
    order = np.argsort(values, kind="stable")
    return values[order], vectors[:, order]
