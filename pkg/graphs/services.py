import logging

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import breadth_first_order

from core.exceptions import IndexRangeError, InvalidSizeError, StructureError
from .constants import LaplacianKind, MIN_CYCLE_LENGTH
from .structures import DirichletSubset, LaplacianMatrix, RegularGraph

logger = logging.getLogger(__name__)


def _is_connected(adjacency):
    if adjacency.shape[0] == 0:
        return False
    reached = breadth_first_order(csr_matrix(adjacency), 0, directed=False, return_predecessors=False)
    return len(reached) == adjacency.shape[0]


def regular_graph(adjacency, coordinate_shape=None, label=""):
    """
    Validates an adjacency matrix and wraps it as a RegularGraph.
    Rejects loops, asymmetric relations, non-uniform degree and disconnected graphs.
    """
    adjacency = np.asarray(adjacency, dtype=bool)
    if adjacency.ndim != 2 or adjacency.shape[0] != adjacency.shape[1]:
        raise StructureError(f"Adjacency must be square, got shape {adjacency.shape}.")
    if adjacency.diagonal().any():
        raise StructureError("Adjacency has loops; only simple graphs are supported.")
    if not np.array_equal(adjacency, adjacency.T):
        raise StructureError("Adjacency is not symmetric.")

    degrees = adjacency.sum(axis=1)
    if degrees.size == 0 or degrees.min() != degrees.max():
        raise StructureError("Graph is not regular.")
    if not _is_connected(adjacency):
        raise StructureError("Graph is not connected.")

    return RegularGraph(
        adjacency=adjacency,
        degree=int(degrees[0]),
        coordinate_shape=tuple(coordinate_shape) if coordinate_shape is not None else None,
        label=label,
    )


def build_cycle(m):
    if m < MIN_CYCLE_LENGTH:
        raise InvalidSizeError(f"Cycle length must be at least {MIN_CYCLE_LENGTH}, got {m}.")
    idx = np.arange(m)
    adjacency = np.zeros((m, m), dtype=bool)
    adjacency[idx, (idx + 1) % m] = True
    adjacency[(idx + 1) % m, idx] = True
    return regular_graph(adjacency, coordinate_shape=(m,), label=f"C{m}")


def cartesian_product(g, h):
    """
    Vertex (v, v') sits at index v * |h| + v', so the first factor varies slowest.
    """
    eye_g = np.eye(g.vertex_count, dtype=bool)
    eye_h = np.eye(h.vertex_count, dtype=bool)
    adjacency = np.kron(g.adjacency, eye_h) | np.kron(eye_g, h.adjacency)

    shape = None
    if g.coordinate_shape is not None and h.coordinate_shape is not None:
        shape = g.coordinate_shape + h.coordinate_shape

    product = regular_graph(adjacency, coordinate_shape=shape, label=f"{g} x {h}")
    logger.debug(f"Built {product}: n={product.vertex_count}, d={product.degree}")
    return product


def build_torus(dims):
    dims = tuple(int(m) for m in dims)
    if not dims:
        raise InvalidSizeError("A torus needs at least one dimension.")
    graph = build_cycle(dims[0])
    for m in dims[1:]:
        graph = cartesian_product(graph, build_cycle(m))
    return graph


def full_subset(host):
    return DirichletSubset(host=host, members=tuple(range(host.vertex_count)))


def dirichlet_subset(host, members=None):
    if members is None:
        return full_subset(host)

    members = tuple(int(v) for v in members)
    if not members:
        raise StructureError("A Dirichlet subset needs at least one vertex.")
    if len(set(members)) != len(members):
        raise StructureError(f"Duplicate members in {members}.")
    out_of_range = [v for v in members if not 0 <= v < host.vertex_count]
    if out_of_range:
        raise IndexRangeError(f"Vertices {out_of_range} are not in {host}.")

    induced = host.adjacency[np.ix_(members, members)]
    if not _is_connected(induced):
        raise StructureError(f"Subset {members} does not induce a connected subgraph of {host}.")

    return DirichletSubset(host=host, members=members)


def product_subset(left, right, product=None):
    """
    The subset S x S' inside the product of the two hosts, members ordered
    with the left member varying slowest.
    """
    product = product or cartesian_product(left.host, right.host)
    width = right.host.vertex_count
    members = [x * width + xp for x in left.members for xp in right.members]
    return DirichletSubset(host=product, members=tuple(members))


def laplacian(subset, kind=LaplacianKind.NORMALIZED):
    kind = LaplacianKind(kind)
    idx = subset.index
    adjacency = subset.host.adjacency[np.ix_(idx, idx)].astype(float)
    degrees = subset.degrees

    if kind == LaplacianKind.COMBINATORIAL:
        entries = np.diag(degrees) - adjacency
    elif kind == LaplacianKind.NORMALIZED:
        scale = 1.0 / np.sqrt(degrees)
        entries = np.eye(subset.size) - scale[:, None] * adjacency * scale[None, :]
    else:
        entries = np.eye(subset.size) - adjacency / degrees[:, None]

    return LaplacianMatrix(kind=kind, entries=entries, subset=subset)
