"""Numerical tolerances and solver settings shared across the package."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    """Tolerances used by every validity predicate.

    Attributes
    ----------
    tol_sym : float
        Largest allowed entry of ``|sigma - sigma.T|``.
    tol_phys : float
        Slack on the uncertainty bound ``nu_min >= 1``.
    tol_pure : float
        Slack on ``det(sigma) == 1`` for pure states.
    tol_sep : float
        Slack on the PPT test ``nu_min(sigma^Gamma) >= 1``.
    tol_dcc : float
        Largest allowed x-p cross entry of a de-cross-correlated state.
    tol_symplectic : float
        Largest allowed entry of ``K Omega K^T - Omega`` (and ``K K^T - I``
        for passive matrices).
    """

    tol_sym: float = 1e-10
    tol_phys: float = 1e-9
    tol_pure: float = 1e-8
    tol_sep: float = 1e-9
    tol_dcc: float = 1e-8
    tol_symplectic: float = 1e-10


@dataclass(frozen=True)
class SolverConfig:
    """Settings of the pure-state optimizers behind SOF and EOF.

    The SOF solver is a primal log-barrier method with damped Newton steps
    on a six-parameter chart of pure two-mode states.

    Attributes
    ----------
    restarts : int
        Number of barrier runs: the Williamson seed plus ``restarts - 1``
        perturbed feasible seeds, plus the face seed when ``nu_min`` is near 1.
    mu_start, mu_final, mu_shrink : float
        Barrier parameter schedule.
    max_newton : int
        Newton iterations allowed per barrier stage.
    face_gap : float
        States with ``nu_min - 1`` below this value are treated as lying on
        the face where one Williamson mode is exactly vacuum.
    near_face_gap : float
        Below this value of ``nu_min - 1`` the interior is a thin shell
        around that face. The face optimum then seeds one extra barrier run.
    eof_grid : tuple of int
        Radial and angular resolution of the coarse EOF search on the disk.
    """

    restarts: int = 4
    mu_start: float = 1e-1
    mu_final: float = 1e-13
    mu_shrink: float = 0.05
    max_newton: int = 60
    face_gap: float = 1e-10
    near_face_gap: float = 1e-3
    eof_grid: tuple[int, int] = (41, 90)


@dataclass(frozen=True)
class AlgorithmConfig:
    """Settings of the EOF-maximizing pipeline.

    Attributes
    ----------
    theta_grid : int
        Coarse grid size for the de-cross-correlating angle on ``[0, pi)``.
    theta_tol : float
        Refinement tolerance for that angle.
    tau_grid : int
        Coarse grid size for the transmissivity on ``[0, 1]``.
    tau_tol : float
        Refinement tolerance for the transmissivity.
    fast_path_r : float
        Both squeezing parameters above this value select the fast path.
    gap_tol : float
        Largest accepted ``|E(out) - h0(S(in))|`` and SOF drift.
    retry_restarts : int
        SOF restarts used when the first attempt misses ``gap_tol``.
    """

    theta_grid: int = 360
    theta_tol: float = 1e-10
    tau_grid: int = 101
    tau_tol: float = 1e-6
    fast_path_r: float = 1e-9
    gap_tol: float = 1e-6
    retry_restarts: int = 64


DEFAULT_TOL = Tolerances()
DEFAULT_SOLVER = SolverConfig()
DEFAULT_ALGORITHM = AlgorithmConfig()
