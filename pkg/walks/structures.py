from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class HittingTable:
    """
    Expected first-passage times from one source to every target of a
    2-D torus grid: entries[x, y] = Q(source, (x, y)).
    """
    entries: np.ndarray
    source: tuple
    dims: tuple

    @property
    def maximum(self):
        return float(self.entries.max())

    @property
    def argmax(self):
        return tuple(int(c) for c in np.unravel_index(np.argmax(self.entries), self.entries.shape))

    def rows(self):
        for x in range(self.dims[0]):
            for y in range(self.dims[1]):
                yield x, y, float(self.entries[x, y])
