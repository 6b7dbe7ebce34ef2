"""
The two roles a factor can play in a product formula: it either hands
out its generalized Green's function 𝓖_α on demand (GAlphaProvider) or
its eigensystem (FactorSpectrum).
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np

from closed_forms.services import cycle_eigensystem, cycle_green_alpha_values, cycle_green_values
from core.utils import max_abs
from graphs.services import build_cycle, full_subset, laplacian
from spectral.services import eigensystem, greens_alpha_oracle, greens_pseudo

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class GAlphaProvider:
    subset: object
    degree: int
    evaluate: Callable = field(repr=False)
    pseudo_table: Callable = field(repr=False)
    label: str = ""

    @property
    def size(self):
        return self.subset.size

    @property
    def has_boundary(self):
        return self.subset.is_proper

    def __call__(self, alpha):
        return self.evaluate(alpha)

    def pseudo(self):
        return self.pseudo_table()

    def residual(self, alpha):
        """max |(𝓛_S + α)𝓖_α - (I - P₀)|, with P₀ = 0 when the factor has a boundary."""
        lap = laplacian(self.subset).entries
        target = np.eye(self.size)
        if not self.has_boundary:
            target = target - 1.0 / self.size
        return max_abs((lap + alpha * np.eye(self.size)) @ self(alpha) - target)


@dataclass(frozen=True, eq=False)
class FactorSpectrum:
    eigensystem: object
    degree: int
    label: str = ""

    @property
    def size(self):
        return self.eigensystem.size

    @property
    def has_boundary(self):
        return not self.eigensystem.is_singular

    @property
    def subset(self):
        return self.eigensystem.subset

    @cached_property
    def pseudo(self):
        return greens_pseudo(self.eigensystem).entries


def oracle_provider(subset):
    """𝓖_α of any regular factor (or Dirichlet subset) through its dense eigensystem."""
    es = eigensystem(laplacian(subset))
    return GAlphaProvider(
        subset=subset,
        degree=subset.host.degree,
        evaluate=lambda alpha: greens_alpha_oracle(es, alpha).entries,
        pseudo_table=lambda: greens_pseudo(es).entries,
        label=f"oracle({subset.host})",
    )


def _distance_matrix(m):
    idx = np.arange(m)
    return np.abs(idx[:, None] - idx[None, :])


def cycle_provider(m):
    """𝓖_α of the full cycle C_m from its closed form."""
    graph = build_cycle(m)
    distances = _distance_matrix(m)
    return GAlphaProvider(
        subset=full_subset(graph),
        degree=2,
        evaluate=lambda alpha: cycle_green_alpha_values(m, alpha, distances),
        pseudo_table=lambda: cycle_green_values(m, distances),
        label=f"closed({graph})",
    )


def factor_spectrum(subset):
    return FactorSpectrum(
        eigensystem=eigensystem(laplacian(subset)),
        degree=subset.host.degree,
        label=str(subset.host),
    )


def cycle_spectrum(m):
    return FactorSpectrum(eigensystem=cycle_eigensystem(m), degree=2, label=f"C{m}")
