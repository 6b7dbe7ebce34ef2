"""
Residuals of the Fourier-sum identities: each left side is a direct sum
over the cycle eigenvectors, each right side the matching closed form.
"""
import numpy as np

from core.exceptions import IndexRangeError
from .services import cycle_eigensystem, cycle_green
from .tori import torus_green


def _check_vertex(m, *vertices):
    for v in vertices:
        if not 0 <= int(v) < m:
            raise IndexRangeError(f"Vertex {v} is outside 0..{m - 1}.")


def _fourier_products(es, x, y):
    """φ_j(x)·conj(φ_j(y)) and λ_j for the λ > 0 part of a cycle eigensystem."""
    positive = es.positive
    return es.vectors[x, positive] * es.vectors[y, positive].conj(), es.values[positive]


def identity_residual_cycle(m, x, y):
    _check_vertex(m, x, y)
    products, values = _fourier_products(cycle_eigensystem(m), x, y)
    lhs = np.sum(products / values)
    return float(abs(lhs - cycle_green(m, abs(y - x))))


def identity_residual_torus(m, n, x, xp, y, yp):
    _check_vertex(m, x, y)
    _check_vertex(n, xp, yp)

    es, es_p = cycle_eigensystem(m), cycle_eigensystem(n)
    u = es.vectors[x] * es.vectors[y].conj()
    v = es_p.vectors[xp] * es_p.vectors[yp].conj()
    weights = (es.values[:, None] + es_p.values[None, :]) / 2
    weights[0, 0] = np.inf
    lhs = np.sum(np.outer(u, v) / weights)

    rhs = torus_green(m, n, abs(y - x), abs(yp - xp))
    return float(abs(lhs - rhs))
