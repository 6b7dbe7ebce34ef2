from dataclasses import dataclass

import numpy as np

from graphs.constants import LaplacianKind
from graphs.structures import DirichletSubset


@dataclass(frozen=True, eq=False)
class Eigensystem:
    """
    Ascending eigenvalues of a normalized (Dirichlet) Laplacian with
    orthonormal eigenvectors stored as the columns of `vectors`.
    `labels` keeps the original index of each pair when the system was
    produced in some other order (e.g. the Fourier index j of a cycle).
    """
    values: np.ndarray
    vectors: np.ndarray
    is_singular: bool
    subset: DirichletSubset | None = None
    labels: tuple | None = None

    @property
    def size(self):
        return self.values.shape[0]

    @property
    def positive(self):
        """Slice of the pairs with λ > 0 (drops λ₀ for a boundaryless graph)."""
        return slice(1, None) if self.is_singular else slice(0, None)

    def gram_residual(self):
        gram = self.vectors.conj().T @ self.vectors
        return float(np.max(np.abs(gram - np.eye(self.size))))

    def with_vectors(self, vectors):
        return Eigensystem(
            values=self.values,
            vectors=vectors,
            is_singular=self.is_singular,
            subset=self.subset,
            labels=self.labels,
        )


@dataclass(frozen=True, eq=False)
class GreenTable:
    entries: np.ndarray
    subset: DirichletSubset | None = None
    alpha: float | None = None
    kind: LaplacianKind = LaplacianKind.NORMALIZED

    @property
    def size(self):
        return self.entries.shape[0]

    @property
    def is_pseudo(self):
        """True for the boundaryless normalized Green's function 𝓖 (the pseudo-inverse)."""
        return (
            self.subset is not None
            and not self.subset.is_proper
            and self.alpha is None
            and self.kind == LaplacianKind.NORMALIZED
        )

    def __getitem__(self, key):
        return self.entries[key]


@dataclass(frozen=True, eq=False)
class TransitionMatrix:
    entries: np.ndarray
    subset: DirichletSubset

    @property
    def absorbing(self):
        return self.subset.is_proper
