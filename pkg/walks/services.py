import logging

import numpy as np
import scipy.linalg
from django.conf import settings

from closed_forms.structures import TorusSpec
from closed_forms.tori import canonical_displacements, representative_row
from core.exceptions import IndexRangeError, InvalidSizeError, MisuseError, ShapeError, StructuralError
from core.utils import max_abs
from graphs.services import full_subset
from spectral.services import fundamental_matrix, stationary, transition_matrix
from .structures import HittingTable

logger = logging.getLogger(__name__)


def _check_vertex(g, *vertices):
    for v in vertices:
        if not 0 <= int(v) < g.vertex_count:
            raise IndexRangeError(f"Vertex {v} is not in {g}.")


def hitting_time(g, green, x, y):
    """
    Q(x, y) = (vol/d_y)·𝓖(y, y) - (vol/√(d_x d_y))·𝓖(x, y); on a regular
    graph this is n·(𝓖(y, y) - 𝓖(x, y)).
    """
    if not green.is_pseudo:
        raise MisuseError("Hitting times need the boundaryless normalized Green's function.")
    if green.size != g.vertex_count:
        raise ShapeError(f"Green table has {green.size} rows, graph has {g.vertex_count} vertices.")
    _check_vertex(g, x, y)
    if x == y:
        return 0.0

    d = g.degrees
    vol = g.volume
    return float(vol / d[y] * green[y, y] - vol / np.sqrt(d[x] * d[y]) * green[x, y])


def hitting_oracle(g, y):
    """
    Q(., y) from first-step analysis: (I - P) restricted to V minus {y}
    applied to h gives the all-ones vector.
    """
    _check_vertex(g, y)
    n = g.vertex_count
    if n > settings.GREENS_HITTING_ORACLE_MAX_STATES:
        raise InvalidSizeError(
            f"First-step oracle is limited to {settings.GREENS_HITTING_ORACLE_MAX_STATES} states, got {n}."
        )

    keep = np.flatnonzero(np.arange(n) != y)
    p = transition_matrix(full_subset(g)).entries
    system = np.eye(n - 1) - p[np.ix_(keep, keep)]
    ones = np.ones(n - 1)
    try:
        h = scipy.linalg.solve(system, ones)
    except (scipy.linalg.LinAlgError, ValueError) as exc:
        raise StructuralError(f"First-step system for target {y} is singular: {exc}")

    residual = max_abs(system @ h - ones)
    if residual > settings.GREENS_EIGEN_RESIDUAL_TOL * max(1.0, max_abs(h)):
        raise StructuralError(f"First-step system residual {residual:.3e} for target {y}.")

    column = np.zeros(n)
    column[keep] = h
    return column


def hitting_from_fundamental(g, x, y):
    """Q(x, y) = (Z(y, y) - Z(x, y)) / π_y."""
    _check_vertex(g, x, y)
    if x == y:
        return 0.0
    z = fundamental_matrix(g)
    return float((z[y, y] - z[x, y]) / stationary(g)[y])


def hitting_grid(dims, source=(0, 0)):
    """
    Q(source, target) for every target of a 2-D torus. Distinct Green
    values come from the representative row and are spread over the grid
    by translation and reflection symmetry.
    """
    spec = dims if isinstance(dims, TorusSpec) else TorusSpec(tuple(dims))
    if spec.t != 2:
        raise ShapeError(f"Hitting grids are two-dimensional, got dims {spec.dims}.")
    source = tuple(int(c) for c in source)
    if len(source) != 2 or not all(0 <= c < m for c, m in zip(source, spec.dims)):
        raise IndexRangeError(f"Source {source} is not a vertex of torus {spec.dims}.")

    _, values = representative_row(spec)
    values = values.reshape(spec.half_widths)

    xs, ys = np.meshgrid(np.arange(spec.dims[0]), np.arange(spec.dims[1]), indexing="ij")
    targets = np.stack([xs, ys], axis=-1)
    canon = canonical_displacements(spec.dims, np.asarray(source), targets)

    entries = spec.vertex_count * (values[0, 0] - values[canon[..., 0], canon[..., 1]])
    entries[source] = 0.0
    logger.info(f"Hitting grid on torus {spec.dims} from {source}: max {entries.max():.4f}")
    return HittingTable(entries=entries, source=source, dims=spec.dims)
