import logging

import numpy as np
from django.conf import settings

from core.exceptions import MisuseError
from core.utils import discard_imaginary
from graphs.services import cartesian_product, product_subset
from spectral.structures import Eigensystem, GreenTable

logger = logging.getLogger(__name__)


def _check_roles(g, s, boundary):
    if boundary:
        if not g.has_boundary:
            raise MisuseError(
                "The 𝓖_α factor must carry the boundary; orient the product so the "
                "eigensystem comes from the other factor."
            )
    elif g.has_boundary or s.has_boundary:
        raise MisuseError("Boundaryless product formula called with a Dirichlet factor.")


def _check_equal_degree(g, s):
    if g.degree != s.degree:
        raise MisuseError(
            f"Factor degrees differ ({g.degree} vs {s.degree}); use the general-degree formula."
        )


def _residue_sum(g, s, scale, skip_zero):
    """
    Σ_k 𝓖_{scale·λ'_k} ⊗ φ'_k φ'_k*, summed index by index. Layout is the
    product order (x, x') with x varying slowest.
    """
    es = s.eigensystem
    start = 1 if skip_zero else 0
    vectors = es.vectors[:, start:]
    shifts = scale * es.values[start:]

    total = np.zeros((g.size * s.size, g.size * s.size), dtype=complex)
    for k, alpha in enumerate(shifts):
        projector = np.outer(vectors[:, k], vectors[:, k].conj())
        total += np.kron(g(alpha), projector)
    return total


def _table(g, s, entries, product_graph=None):
    entries = discard_imaginary(entries, settings.GREENS_IMAG_RESIDUE_TOL, what="product Green table")
    subset = None
    if g.subset is not None and s.subset is not None:
        subset = product_subset(g.subset, s.subset, product_graph)
    return GreenTable(entries=entries, subset=subset)


def product_green_boundary_general(g, s, product_graph=None):
    """
    Dirichlet Green's function of S x S' from 𝓖_α on S (degree d) and the
    eigensystem of S' (degree d'):
        𝐆 = ((d+d')/d) Σ_k φ'_k φ'_k* 𝓖_{d'λ'_k/d}
    """
    _check_roles(g, s, boundary=True)
    d, dp = g.degree, s.degree
    entries = (d + dp) / d * _residue_sum(g, s, dp / d, skip_zero=False)
    logger.debug(f"Boundary product {g.label} x {s.label}: {entries.shape[0]} vertices")
    return _table(g, s, entries, product_graph)


def product_green_boundary_equal(g, s, product_graph=None):
    """𝐆 = 2 Σ_k φ'_k φ'_k* 𝓖_{λ'_k} for factors of equal degree."""
    _check_equal_degree(g, s)
    return product_green_boundary_general(g, s, product_graph)


def product_green_noboundary_general(g, s, product_graph=None):
    """
    Pseudo Green's function of Γ x Γ' with m = |V|, n = |V'|:
        𝐆 = ((d+d')/d) Σ_{k≥1} φ'_k φ'_k* 𝓖_{d'λ'_k/d}
            + ((d+d')/(dn)) 𝓖 ⊗ J + ((d+d')/(d'm)) J ⊗ 𝓖'
    """
    _check_roles(g, s, boundary=False)
    d, dp = g.degree, s.degree
    m, n = g.size, s.size

    entries = (d + dp) / d * _residue_sum(g, s, dp / d, skip_zero=True)
    entries += (d + dp) / (d * n) * np.kron(g.pseudo(), np.ones((n, n)))
    entries += (d + dp) / (dp * m) * np.kron(np.ones((m, m)), s.pseudo)
    logger.debug(f"Boundaryless product {g.label} x {s.label}: {m * n} vertices")
    return _table(g, s, entries, product_graph)


def product_green_noboundary_equal(g, s, product_graph=None):
    """𝐆 = 2 Σ_{k≥1} φ'_k φ'_k* 𝓖_{λ'_k} + (2/n)𝓖 ⊗ J + (2/m) J ⊗ 𝓖'."""
    _check_equal_degree(g, s)
    return product_green_noboundary_general(g, s, product_graph)


def product_eigensystem(es, degree, es_p, degree_p):
    """
    Eigensystem of the product: values (dλ_j + d'λ'_k)/(d+d') with
    eigenvectors φ_j ⊗ φ'_k, sorted ascending.
    """
    values = (degree * es.values[:, None] + degree_p * es_p.values[None, :]) / (degree + degree_p)
    vectors = np.einsum("xj,ak->xajk", es.vectors, es_p.vectors).reshape(
        es.size * es_p.size, es.size * es_p.size
    )
    values = values.ravel()
    order = np.argsort(values, kind="stable")

    subset = None
    if es.subset is not None and es_p.subset is not None:
        subset = product_subset(es.subset, es_p.subset, cartesian_product(es.subset.host, es_p.subset.host))
    return Eigensystem(
        values=values[order],
        vectors=vectors[:, order],
        is_singular=es.is_singular and es_p.is_singular,
        subset=subset,
    )


def rotate_eigenspaces(es, rng, tol=1e-9):
    """
    Replaces the basis of every repeated eigenspace by a random orthonormal
    one. Downstream spectral sums must not notice.
    """
    vectors = es.vectors.astype(complex if np.iscomplexobj(es.vectors) else float, copy=True)
    values = es.values
    start = 0
    while start < len(values):
        stop = start + 1
        while stop < len(values) and abs(values[stop] - values[start]) <= tol:
            stop += 1
        width = stop - start
        if width > 1:
            block = rng.normal(size=(width, width))
            if np.iscomplexobj(vectors):
                block = block + 1j * rng.normal(size=(width, width))
            q, _ = np.linalg.qr(block)
            vectors[:, start:stop] = vectors[:, start:stop] @ q
        start = stop
    return es.with_vectors(vectors)
