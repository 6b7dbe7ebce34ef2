import logging
from functools import lru_cache

import numpy as np
from django.conf import settings

from core.exceptions import (
    ConvergenceError,
    DivergenceError,
    MisuseError,
    PoleError,
    ShapeError,
    SingularityError,
)
from core.utils import discard_imaginary, max_abs, symmetry_residual
from graphs.constants import LaplacianKind
from graphs.services import full_subset, laplacian
from graphs.structures import LaplacianMatrix
from .jacobi import jacobi_eigh
from .structures import Eigensystem, GreenTable, TransitionMatrix

logger = logging.getLogger(__name__)


def _solve(entries):
    if settings.GREENS_EIGENSOLVER == "lapack":
        return np.linalg.eigh(entries)
    return jacobi_eigh(entries)


def eigensystem(matrix, singular=None):
    """
    Dense eigendecomposition of a symmetric Laplacian.

    `matrix` is a LaplacianMatrix (singular iff it spans the whole graph)
    or a bare symmetric array, in which case `singular` says whether the
    smallest eigenvalue is the structural zero.
    """
    subset = None
    if isinstance(matrix, LaplacianMatrix):
        subset = matrix.subset
        entries = np.asarray(matrix.entries, dtype=float)
        if singular is None:
            singular = not subset.is_proper
    else:
        entries = np.asarray(matrix, dtype=float)
        singular = bool(singular)

    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise ShapeError(f"Expected a square matrix, got shape {entries.shape}.")
    asym = symmetry_residual(entries)
    if asym > settings.GREENS_SYMMETRY_TOL:
        raise ShapeError(f"Matrix is not symmetric (residual {asym:.3e}).")

    values, vectors = _solve(entries)

    residual = np.linalg.norm(entries @ vectors - vectors * values[None, :], axis=0)
    worst = float(residual.max()) if residual.size else 0.0
    if worst > settings.GREENS_EIGEN_RESIDUAL_TOL:
        raise ConvergenceError(f"Eigenpair residual {worst:.3e} exceeds tolerance.")

    if singular:
        values[0] = 0.0
    values = np.clip(values, 0.0, 2.0)

    logger.debug(f"Eigensystem n={entries.shape[0]} singular={singular} residual={worst:.2e}")
    return Eigensystem(values=values, vectors=vectors, is_singular=singular, subset=subset)


def _spectral_sum(es, weights):
    positive = es.positive
    vectors = es.vectors[:, positive]
    table = (vectors * weights[None, :]) @ vectors.conj().T
    return discard_imaginary(table, settings.GREENS_IMAG_DISCARD_TOL, what="Green table")


def greens_pseudo(es):
    """𝓖 = Σ_{λ>0} φφ*/λ over a boundaryless eigensystem."""
    if not es.is_singular:
        raise MisuseError("greens_pseudo needs a full-graph eigensystem; use greens_dirichlet instead.")
    entries = _spectral_sum(es, 1.0 / es.values[es.positive])
    return GreenTable(entries=entries, subset=es.subset)


def greens_dirichlet(matrix, kind=None):
    """
    Inverse of a Dirichlet Laplacian. Accepts a LaplacianMatrix or a
    DirichletSubset together with the Laplacian kind to build.
    """
    if not isinstance(matrix, LaplacianMatrix):
        matrix = laplacian(matrix, kind or LaplacianKind.NORMALIZED)
    if not matrix.subset.is_proper:
        raise SingularityError("The Laplacian of a boundaryless graph is singular; use greens_pseudo.")

    entries = np.linalg.inv(matrix.entries)
    residual = max_abs(matrix.entries @ entries - np.eye(matrix.size))
    if residual > settings.GREENS_EIGEN_RESIDUAL_TOL:
        raise ConvergenceError(f"Dirichlet inverse residual {residual:.3e} exceeds tolerance.")
    return GreenTable(entries=entries, subset=matrix.subset, kind=matrix.kind)


def greens_alpha_oracle(es, alpha):
    """
    𝓖_α = Σ_{λ>0} φφ*/(λ+α). On a full graph λ₀ is left out, so α = 0
    gives back the pseudo-inverse.
    """
    alpha = float(alpha)
    shifted = es.values[es.positive] + alpha
    if shifted.size and np.min(np.abs(shifted)) < settings.GREENS_POLE_TOL:
        raise PoleError(f"α = {alpha} hits an eigenvalue pole.")
    entries = _spectral_sum(es, 1.0 / shifted)
    return GreenTable(entries=entries, subset=es.subset, alpha=alpha)


def transition_matrix(subset):
    idx = subset.index
    adjacency = subset.host.adjacency[np.ix_(idx, idx)].astype(float)
    return TransitionMatrix(entries=adjacency / subset.degrees[:, None], subset=subset)


def stationary(g):
    return g.degrees / g.volume


def transient_series(p, tol=1e-12):
    """
    Partial sums of Σ Pⁿ for an absorbing walk. Stops once the increment
    and its geometric tail estimate are both below `tol`.
    """
    if not p.absorbing:
        raise DivergenceError("Σ Pⁿ does not converge for a walk without absorbing boundary.")

    term = np.eye(p.entries.shape[0])
    total = term.copy()
    previous = 1.0
    for count in range(1, settings.GREENS_SERIES_MAX_TERMS + 1):
        term = term @ p.entries
        total += term
        size = max_abs(term)
        ratio = min(size / previous, 1.0 - 1e-12) if previous > 0 else 0.0
        previous = size
        if size < tol and size * ratio / (1.0 - ratio) < tol:
            logger.debug(f"Transient series converged after {count} terms")
            return GreenTable(entries=total, subset=p.subset, kind=LaplacianKind.DISCRETE_LAPLACE)

    raise ConvergenceError(
        f"Transient series did not reach tol={tol} within {settings.GREENS_SERIES_MAX_TERMS} terms."
    )


def fundamental_matrix(g):
    """Abel-summed fundamental matrix Z = (I − P + Π)⁻¹ − Π."""
    n = g.vertex_count
    p = transition_matrix(full_subset(g)).entries
    pi = np.tile(stationary(g), (n, 1))
    return np.linalg.inv(np.eye(n) - p + pi) - pi


@lru_cache(maxsize=32)
def _torus_spectrum(dims):
    grids = np.meshgrid(*[np.arange(m) for m in dims], indexing="ij")
    values = sum(1.0 - np.cos(2 * np.pi * j / m) for j, m in zip(grids, dims)) / len(dims)
    values.setflags(write=False)
    return grids, values


def torus_spectral_entry(dims, displacement):
    """
    𝓖 on the torus C_{m1} x ... x C_{mt} by direct summation over the
    product Fourier basis; depends only on the displacement y − x.
    """
    dims = tuple(int(m) for m in dims)
    if len(displacement) != len(dims):
        raise ShapeError(f"Displacement {tuple(displacement)} does not match dims {dims}.")

    grids, values = _torus_spectrum(dims)
    phase = sum(2 * np.pi * j * (int(a) % m) / m for j, a, m in zip(grids, displacement, dims))
    mask = values > 0
    mask.flat[0] = False
    return float(np.sum(np.cos(phase[mask]) / values[mask]) / values.size)
