from dataclasses import dataclass
from functools import cached_property

import numpy as np

from core.exceptions import IndexRangeError, InvalidSizeError
from graphs.constants import MIN_CYCLE_LENGTH


@dataclass(frozen=True)
class TorusSpec:
    dims: tuple

    def __post_init__(self):
        dims = tuple(int(m) for m in self.dims)
        if not dims:
            raise InvalidSizeError("A torus needs at least one dimension.")
        small = [m for m in dims if m < MIN_CYCLE_LENGTH]
        if small:
            raise InvalidSizeError(f"Every torus dimension must be at least {MIN_CYCLE_LENGTH}, got {small}.")
        object.__setattr__(self, "dims", dims)

    @property
    def t(self):
        return len(self.dims)

    @property
    def vertex_count(self):
        return int(np.prod(self.dims))

    @property
    def degree(self):
        return 2 * self.t

    @cached_property
    def half_widths(self):
        """Distinct distances per dimension: 0..floor(m/2)."""
        return tuple(m // 2 + 1 for m in self.dims)

    @property
    def representative_count(self):
        return int(np.prod(self.half_widths))

    def check_displacements(self, displacements):
        displacements = np.atleast_2d(np.asarray(displacements, dtype=int))
        if displacements.shape[1] != self.t:
            raise IndexRangeError(
                f"Displacements have {displacements.shape[1]} coordinates, torus has {self.t}."
            )
        upper = np.asarray(self.dims)
        if np.any(displacements < 0) or np.any(displacements >= upper):
            raise IndexRangeError(f"Displacement outside 0..m-1 for dims {self.dims}.")
        return displacements


@dataclass(frozen=True)
class CycleDistance:
    m: int
    a: int

    def __post_init__(self):
        if self.m < MIN_CYCLE_LENGTH:
            raise InvalidSizeError(f"Cycle length must be at least {MIN_CYCLE_LENGTH}, got {self.m}.")
        if not 0 <= self.a < self.m:
            raise IndexRangeError(f"Distance {self.a} is outside 0..{self.m - 1}.")

    @property
    def canonical(self):
        return min(self.a, self.m - self.a)

    @classmethod
    def between(cls, m, x, y):
        return cls(m=m, a=abs(int(y) - int(x)))
