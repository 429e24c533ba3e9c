"""Seeded random two-mode Gaussian states.

Sample ``i`` of a batch uses the seed
``SeedSequence(master_seed, spawn_key=(i,)).generate_state(1, uint64)[0]``
and a Philox generator built from it, so any record can be regenerated on
its own from the logged seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from ..decompositions import unitary_to_passive
from ..errors import InvalidParams
from ..transforms import beam_splitter, compose, local_squeezers, rotation

Stratum = Literal["uniform", "near_pure", "high_squeeze"]
STRATA: tuple[str, ...] = ("uniform", "near_pure", "high_squeeze")


@dataclass(frozen=True)
class GeneratorConfig:
    """Batch settings.

    ``near_pure`` overrides the thermal range with ``nu in [1, 1.05]`` and
    ``high_squeeze`` overrides the squeezing range with ``r in [1.5, 2]``.
    """

    seed: int = 0
    nu_max: float = 5.0
    r_max: float = 2.0
    n_samples: int = 10000
    stratification: Stratum = "uniform"

    def __post_init__(self):
        if not 0 <= int(self.seed) < 2**64:
            raise InvalidParams("seed must fit in 64 unsigned bits")
        if not self.nu_max >= 1.0:
            raise InvalidParams("nu_max must be >= 1")
        if not self.r_max >= 0.0:
            raise InvalidParams("r_max must be >= 0")
        if self.n_samples < 0:
            raise InvalidParams("n_samples must be non-negative")
        if self.stratification not in STRATA:
            raise InvalidParams(f"stratification must be one of {STRATA}")

    def ranges(self) -> tuple[tuple[float, float], tuple[float, float]]:
        """``((nu_lo, nu_hi), (r_lo, r_hi))`` for the stratum."""
        nu, r = (1.0, self.nu_max), (0.0, self.r_max)
        if self.stratification == "near_pure":
            nu = (1.0, 1.05)
        elif self.stratification == "high_squeeze":
            r = (1.5, 2.0)
        return nu, r


def sample_seed(master_seed: int, sample_id: int) -> int:
    """Counter-based per-sample seed."""
    ss = np.random.SeedSequence(int(master_seed), spawn_key=(int(sample_id),))
    return int(ss.generate_state(1, np.uint64)[0])


def sample_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(seed)))


def random_passive(n_modes: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random passive symplectic.

    Two modes: ``(R(a) + R(b)) BS(tau) (R(c) + I)`` with phases uniform on
    ``[0, 2pi)`` and ``tau ~ U[0, 1]``, which is Haar on U(2). Other sizes
    use a QR-based Haar unitary.
    """
    if n_modes == 1:
        return rotation(rng.uniform(0.0, 2 * np.pi))
    if n_modes == 2:
        a, b, c = rng.uniform(0.0, 2 * np.pi, 3)
        tau = rng.uniform(0.0, 1.0)
        return compose([rotation(c, 0, 2), beam_splitter(tau), rotation(a, 0, 2), rotation(b, 1, 2)])
    Z = rng.normal(size=(n_modes, n_modes)) + 1j * rng.normal(size=(n_modes, n_modes))
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return unitary_to_passive(Q * (d / np.abs(d)))


def random_state(cfg: GeneratorConfig, rng: np.random.Generator) -> np.ndarray:
    """``S D S^T`` with ``S = K1 Z(r) K2`` and thermal ``D``."""
    (nu_lo, nu_hi), (r_lo, r_hi) = cfg.ranges()
    nu = rng.uniform(nu_lo, nu_hi, 2)
    r = rng.uniform(r_lo, r_hi, 2)
    K1, K2 = random_passive(2, rng), random_passive(2, rng)
    S = K1 @ local_squeezers(r[0], r[1]) @ K2
    D = np.diag([nu[0], nu[0], nu[1], nu[1]])
    sigma = S @ D @ S.T
    return (sigma + sigma.T) / 2


def sample_state(cfg: GeneratorConfig, sample_id: int) -> tuple[int, np.ndarray]:
    """Seed and state of sample ``sample_id``."""
    seed = sample_seed(cfg.seed, sample_id)
    return seed, random_state(cfg, sample_rng(seed))
