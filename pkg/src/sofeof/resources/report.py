"""Combined SOF/EOF report for one state."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..config import DEFAULT_SOLVER, DEFAULT_TOL, SolverConfig, Tolerances
from .auxiliary import h0
from .eof import gaussian_eof
from .sof import sof_mixed


def eof_potential_bound(sigma: np.ndarray, cfg: SolverConfig = DEFAULT_SOLVER, seed: int = 0) -> float:
    """Upper bound ``h0(SOF(sigma))`` on the EOF reachable with passive optics and vacua."""
    return h0(sof_mixed(sigma, cfg, seed).value)


@dataclass(frozen=True)
class ResourceReport:
    """SOF, EOF, bound and optimizer diagnostics of one state.

    ``gap = h0_of_sof - eof`` is non-negative up to optimizer noise.
    """

    sof: float
    eof: float
    h0_of_sof: float
    gap: float
    iterations: int
    restarts: int
    achieved_tolerance: float
    optimal_pure_state: np.ndarray

    def to_dict(self) -> dict:
        return {
            "sof": self.sof,
            "eof": self.eof,
            "h0_of_sof": self.h0_of_sof,
            "gap": self.gap,
            "optimizer": {
                "iterations": self.iterations,
                "restarts": self.restarts,
                "achieved_tolerance": self.achieved_tolerance,
                "optimal_pure_state": {"n_modes": 2, "matrix": self.optimal_pure_state.tolist()},
            },
        }


def resource_report(sigma: np.ndarray, cfg: SolverConfig = DEFAULT_SOLVER, seed: int = 0,
                    tol: Tolerances = DEFAULT_TOL) -> ResourceReport:
    """Evaluate SOF, Gaussian EOF and the saturation gap.

    The reported optimizer block describes the SOF solve, whose witness is
    the optimal pure state.
    """
    s = sof_mixed(sigma, cfg, seed, tol)
    e = gaussian_eof(sigma, cfg, tol, witness=False)
    b = h0(s.value)
    return ResourceReport(
        sof=s.value, eof=e.value, h0_of_sof=b, gap=b - e.value,
        iterations=s.iterations, restarts=s.restarts,
        achieved_tolerance=s.achieved_tolerance, optimal_pure_state=s.witness.pi,
    )
