"""Pure-plus-noise decomposition returned by the optimizers."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PureDecomposition:
    """``sigma = pi + phi`` with ``pi`` pure and ``phi`` positive semidefinite."""

    pi: np.ndarray
    phi: np.ndarray

    @classmethod
    def from_pure(cls, sigma: np.ndarray, pi: np.ndarray) -> "PureDecomposition":
        pi = (pi + pi.T) / 2
        return cls(pi=pi, phi=sigma - pi)

    @property
    def min_noise_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.phi)[0])
