"""
Closed forms for tori C_{m1} x ... x C_{mt}.

`t_torus_row` is the workhorse: it peels off the largest cycle, sums the
residue terms over the Fourier indices K of the remaining (t-1)-torus
with the cycle's 𝓖_α, and recurses on the remaining dimensions for the
𝐆' term. The 𝓖_α values are computed once per distinct first-coordinate
distance and shared by every entry in the request.
"""
import logging
from itertools import product

import numpy as np
from django.conf import settings

from core.exceptions import IndexRangeError
from core.utils import discard_imaginary
from graphs.services import build_torus, full_subset
from spectral.structures import GreenTable
from .services import cycle_green, cycle_green_alpha_values, cycle_green_values
from .structures import CycleDistance, TorusSpec

logger = logging.getLogger(__name__)

ROW_CHUNK = 4096


def _fourier_grid(dims):
    """All index tuples K over `dims` except the zero tuple, and their eigenvalue sums."""
    grids = np.meshgrid(*[np.arange(m) for m in dims], indexing="ij")
    indices = np.stack([g.ravel() for g in grids], axis=1)[1:]
    shifts = sum(1.0 - np.cos(2 * np.pi * indices[:, s] / m) for s, m in enumerate(dims))
    return indices, shifts


def _residue_sum(m1, rest, first, others):
    indices, shifts = _fourier_grid(rest)
    frequencies = (indices / np.asarray(rest, dtype=float)).T

    distances, slot = np.unique(first, return_inverse=True)
    g_alpha = cycle_green_alpha_values(m1, shifts[None, :], distances[:, None])

    total = np.empty(len(first), dtype=complex)
    for start in range(0, len(first), ROW_CHUNK):
        stop = start + ROW_CHUNK
        phases = np.exp(2j * np.pi * (others[start:stop] @ frequencies))
        total[start:stop] = np.sum(phases * g_alpha[slot[start:stop]], axis=1)
    return total / np.prod(rest)


def _row(dims, displacements):
    t = len(dims)
    if t == 1:
        return cycle_green_values(dims[0], displacements[:, 0])

    m1, rest = dims[0], dims[1:]
    first, others = displacements[:, 0], displacements[:, 1:]

    residue = discard_imaginary(
        _residue_sum(m1, rest, first, others),
        settings.GREENS_IMAG_RESIDUE_TOL,
        what=f"torus {dims} residue sum",
    )
    inner = _row(rest, others)
    return (
        t * residue
        + t / ((t - 1) * m1) * inner
        + t / np.prod(rest) * cycle_green_values(m1, first)
    )


def t_torus_row(dims, displacements):
    """
    𝐆 at many displacements of the same torus; returns an array aligned
    with `displacements` (shape (N, t)).
    """
    spec = dims if isinstance(dims, TorusSpec) else TorusSpec(tuple(dims))
    displacements = spec.check_displacements(displacements)

    order = np.argsort([-m for m in spec.dims], kind="stable")
    dims_sorted = tuple(spec.dims[s] for s in order)
    values = _row(dims_sorted, displacements[:, order])
    logger.debug(f"Evaluated {len(values)} entries of torus {spec.dims}")
    return values


def t_torus_green(dims, displacement):
    spec = dims if isinstance(dims, TorusSpec) else TorusSpec(tuple(dims))
    if spec.t == 1:
        return cycle_green(spec.dims[0], int(np.ravel(displacement)[0]))
    return float(t_torus_row(spec, [tuple(displacement)])[0])


def torus_green(m, n, da, db):
    """
    𝐆 on C_m x C_n as a single sum over the Fourier indices k of C_n,
    following the two-dimensional closed form term by term.
    """
    da = CycleDistance(m=int(m), a=int(da)).a
    db = CycleDistance(m=int(n), a=int(db)).a

    k = np.arange(1, n)
    shifts = 1.0 - np.cos(2 * np.pi * k / n)
    phases = np.exp(2j * np.pi * k * db / n)
    residue = np.sum(phases * cycle_green_alpha_values(m, shifts, da))
    residue = discard_imaginary(residue, settings.GREENS_IMAG_RESIDUE_TOL, what=f"C{m} x C{n} residue sum")

    return float(
        2 / n * residue
        + 2 / n * cycle_green(m, da)
        + 2 / m * cycle_green(n, db)
    )


def torus3_green(m, displacement):
    """𝐆 on C_m x C_m x C_m with both recursion levels written out."""
    a1, a2, a3 = (CycleDistance(m=int(m), a=int(a)).a for a in displacement)
    j, k = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
    j, k = j.ravel()[1:], k.ravel()[1:]
    lam_j = 1.0 - np.cos(2 * np.pi * j / m)
    lam_k = 1.0 - np.cos(2 * np.pi * k / m)

    double = np.sum(
        np.exp(2j * np.pi * (j * a2 + k * a3) / m) * cycle_green_alpha_values(m, lam_j + lam_k, a1)
    )
    k1 = np.arange(1, m)
    single = np.sum(
        np.exp(2j * np.pi * k1 * a3 / m)
        * cycle_green_alpha_values(m, 1.0 - np.cos(2 * np.pi * k1 / m), a2)
    )
    residue = discard_imaginary(double + single, settings.GREENS_IMAG_RESIDUE_TOL, what=f"C{m}^3 residue sum")

    cycles = cycle_green(m, a1) + cycle_green(m, a2) + cycle_green(m, a3)
    return float(3 / m**2 * (residue + cycles))


def representative_displacements(dims):
    """Displacements with every coordinate in 0..floor(m/2), row-major order."""
    spec = dims if isinstance(dims, TorusSpec) else TorusSpec(tuple(dims))
    return np.array(list(product(*[range(w) for w in spec.half_widths])), dtype=int)


def all_displacements(dims):
    spec = dims if isinstance(dims, TorusSpec) else TorusSpec(tuple(dims))
    return np.array(list(product(*[range(m) for m in spec.dims])), dtype=int)


def representative_row(dims):
    spec = dims if isinstance(dims, TorusSpec) else TorusSpec(tuple(dims))
    displacements = representative_displacements(spec)
    return displacements, t_torus_row(spec, displacements)


def canonical_displacements(dims, sources, targets):
    """Coordinate-wise min(|y-x|, m-|y-x|) for broadcastable coordinate arrays."""
    upper = np.asarray(dims)
    diff = np.mod(np.asarray(targets) - np.asarray(sources), upper)
    return np.minimum(diff, upper - diff)


def torus_table(dims):
    """
    Full n x n table of 𝐆 assembled from the representative row through
    translation and reflection symmetry.
    """
    spec = dims if isinstance(dims, TorusSpec) else TorusSpec(tuple(dims))
    _, values = representative_row(spec)
    values = values.reshape(spec.half_widths)

    coords = all_displacements(spec)
    canon = canonical_displacements(spec.dims, coords[:, None, :], coords[None, :, :])
    return values[tuple(canon[..., s] for s in range(spec.t))]


def green_at(dims, source, target):
    """𝐆(source, target) from coordinate tuples."""
    spec = dims if isinstance(dims, TorusSpec) else TorusSpec(tuple(dims))
    source, target = np.asarray(source, dtype=int), np.asarray(target, dtype=int)
    upper = np.asarray(spec.dims)
    if np.any(source < 0) or np.any(source >= upper) or np.any(target < 0) or np.any(target >= upper):
        raise IndexRangeError(f"Vertex outside torus {spec.dims}.")
    return t_torus_green(spec, canonical_displacements(spec.dims, source, target))


def torus_green_table(dims):
    spec = dims if isinstance(dims, TorusSpec) else TorusSpec(tuple(dims))
    return GreenTable(entries=torus_table(spec), subset=full_subset(build_torus(spec.dims)))
