import logging

import numpy as np

from chebyshev.services import ratio_at_theta, theta_from_alpha
from core.exceptions import DomainError, IndexRangeError, PoleError
from graphs.services import build_cycle, full_subset
from spectral.structures import Eigensystem, GreenTable
from .structures import CycleDistance

logger = logging.getLogger(__name__)


def _distances(m, a):
    a = np.asarray(a, dtype=int)
    if np.any(a < 0) or np.any(a >= m):
        raise IndexRangeError(f"Cycle distance outside 0..{m - 1} for C{m}.")
    return a


def cycle_green(m, a):
    """
    𝓖(a) = (m+1)(m-1)/(6m) - a + a²/m on C_m.
    """
    a = CycleDistance(m=int(m), a=int(a)).a
    return (m + 1) * (m - 1) / (6 * m) - a + a * a / m


def cycle_green_values(m, a):
    """Vectorized cycle_green over an array of distances."""
    a = _distances(m, a).astype(float)
    return (m + 1) * (m - 1) / (6 * m) - a + a * a / m


def cycle_eigensystem(m):
    """
    Fourier eigensystem of C_m: φ_j(x) = exp(-2πijx/m)/√m for λ_j = 1 - cos(2πj/m).
    Sorted ascending; `labels` keeps j for every column.
    """
    graph = build_cycle(m)
    j = np.arange(m)
    values = 1.0 - np.cos(2 * np.pi * j / m)
    values[0] = 0.0
    vectors = np.exp(-2j * np.pi * np.outer(j, j) / m) / np.sqrt(m)

    order = np.argsort(values, kind="stable")
    return Eigensystem(
        values=values[order],
        vectors=vectors[:, order],
        is_singular=True,
        subset=full_subset(graph),
        labels=tuple(int(k) for k in j[order]),
    )


def cycle_green_alpha_values(m, alpha, a):
    """
    𝓖_α(a) = -1/(mα) + T_{m/2-a}(1+α) / (α(2+α) U_{m/2-1}(1+α)),
    broadcast over arrays of shifts and distances.
    """
    alpha = np.asarray(alpha, dtype=float)
    if np.any(alpha < 0):
        raise DomainError(f"𝓖_α on a cycle needs α > 0, got {alpha.min()}.")
    if np.any(alpha == 0):
        raise PoleError("𝓖_α on a cycle has a pole at α = 0.")

    a = _distances(m, a)
    theta = theta_from_alpha(alpha)
    ratio = ratio_at_theta(m / 2 - a, m / 2 - 1, theta)
    return -1.0 / (m * alpha) + ratio / (alpha * (2.0 + alpha))


def cycle_green_alpha(m, alpha, a):
    a = CycleDistance(m=int(m), a=int(a)).a
    return float(cycle_green_alpha_values(m, float(alpha), a))


def cycle_green_table(m):
    """The whole m x m table of 𝓖 on C_m as a pseudo GreenTable."""
    graph = build_cycle(m)
    idx = np.arange(m)
    entries = cycle_green_values(m, np.abs(idx[:, None] - idx[None, :]))
    return GreenTable(entries=entries, subset=full_subset(graph))
