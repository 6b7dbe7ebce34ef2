from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .constants import LaplacianKind

VertexId = int


def _frozen(array):
    array = np.array(array, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class RegularGraph:
    """
    Simple connected graph in which every vertex has the same degree.

    Vertices are 0..n-1. When the graph is a product of cycles,
    `coordinate_shape` holds the cycle lengths and vertex indices are
    row-major over the coordinates (first factor slowest).
    """
    adjacency: np.ndarray
    degree: int
    coordinate_shape: tuple | None = None
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "adjacency", _frozen(self.adjacency.astype(bool)))

    def __str__(self):
        return self.label or f"RegularGraph(n={self.vertex_count}, d={self.degree})"

    @property
    def vertex_count(self):
        return self.adjacency.shape[0]

    @property
    def volume(self):
        return self.degree * self.vertex_count

    @cached_property
    def degrees(self):
        return _frozen(np.full(self.vertex_count, self.degree, dtype=float))

    def neighbors(self, v: VertexId):
        return tuple(int(u) for u in np.flatnonzero(self.adjacency[v]))

    def is_adjacent(self, x: VertexId, y: VertexId):
        return bool(self.adjacency[x, y])

    def coordinates(self, v: VertexId):
        return tuple(int(c) for c in np.unravel_index(v, self.coordinate_shape))

    def vertex_at(self, coords):
        return int(np.ravel_multi_index(tuple(coords), self.coordinate_shape))


@dataclass(frozen=True, eq=False)
class DirichletSubset:
    host: RegularGraph
    members: tuple

    @property
    def is_proper(self):
        return len(self.members) != self.host.vertex_count

    @property
    def size(self):
        return len(self.members)

    @cached_property
    def index(self):
        return np.asarray(self.members, dtype=int)

    @cached_property
    def degrees(self):
        """Host degrees of the members; boundary removal never changes them."""
        return self.host.degrees[self.index]

    @property
    def volume(self):
        return self.host.volume


@dataclass(frozen=True, eq=False)
class LaplacianMatrix:
    kind: LaplacianKind
    entries: np.ndarray
    subset: DirichletSubset

    def __post_init__(self):
        object.__setattr__(self, "entries", _frozen(self.entries))

    @property
    def size(self):
        return self.entries.shape[0]
