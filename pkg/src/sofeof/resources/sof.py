"""Squeezing of formation of pure and mixed two-mode states.

For a mixed state the SOF is the smallest ``r1 + r2`` over pure states
``pi = K Z(r) K^T`` with ``sigma - pi >= 0``. The solver is a primal
log-barrier method on the six-parameter chart of :mod:`.pure_chart`::

    minimize  r1 + r2 - mu [log det(sigma - pi(p)) + log r1 + log r2]

with damped Newton steps (analytic gradient and Hessian, Hessian
eigenvalues mirrored to keep descent directions) and a geometric schedule
``mu -> 0``. Starting points are the Williamson pure part ``S S^T`` and
random pure states ``S K Z K^T S^T`` squeezed less than ``nu_min`` allows,
which are all strictly feasible.

When ``nu_min = 1`` the feasible set has no interior: in the Williamson
frame ``D = 1 (+) nu2 I`` every feasible pure state is ``1 (+) tau`` with
``tau <= nu2 I``, a two-parameter family searched directly. Slightly above
that face the barrier crawls along a thin shell, so the face optimum, which
stays feasible, seeds one extra barrier run.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from ..config import DEFAULT_SOLVER, DEFAULT_TOL, SolverConfig, Tolerances
from ..decompositions import williamson
from ..errors import NotPure, OptimizerFailed, WrongModeCount
from .pure_chart import chart_from_pure, passive_from_angles, pure_state, pure_state_derivatives, squeeze_diag
from .witness import PureDecomposition

_BARRIER_DEGREE = 6  # four eigenvalues of sigma - pi plus r1, r2


def sof_pure(pi: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> float:
    """SOF of a pure state: half the summed log of the ``N`` largest eigenvalues."""
    pi = np.asarray(pi, dtype=float)
    if abs(np.linalg.det(pi) - 1.0) > tol.tol_pure:
        raise NotPure(f"det = {np.linalg.det(pi):.12g}")
    n = pi.shape[0] // 2
    w = np.linalg.eigvalsh((pi + pi.T) / 2)
    return max(0.0, 0.5 * float(np.sum(np.log(w[n:]))))


@dataclass(frozen=True)
class SofResult:
    """Value, witness and optimizer diagnostics of :func:`sof_mixed`."""

    value: float
    witness: PureDecomposition
    iterations: int
    restarts: int
    achieved_tolerance: float
    method: str


def _barrier_value(p, sigma, mu):
    if p[0] <= 0 or p[1] <= 0:
        return np.inf
    K = passive_from_angles(p[2:6])
    w = np.linalg.eigh(sigma - (K * squeeze_diag(p[0], p[1])) @ K.T)[0]
    if w[0] <= 0:
        return np.inf
    return p[0] + p[1] - mu * (np.sum(np.log(w)) + np.log(p[0]) + np.log(p[1]))


def _barrier_model(p, sigma, mu):
    pi, d, dd = pure_state_derivatives(p)
    w, v = np.linalg.eigh(sigma - pi)
    if w[0] <= 0:
        return None
    f = p[0] + p[1] - mu * (np.sum(np.log(w)) + np.log(p[0]) + np.log(p[1]))
    Rinv = (v / w) @ v.T
    A = np.einsum("ij,kjl->kil", Rinv, d)
    g = mu * np.einsum("kii->k", A)
    g[:2] += 1.0 - mu / p[:2]
    H = mu * (np.einsum("ij,klji->kl", Rinv, dd) + np.einsum("kij,lji->kl", A, A))
    H[0, 0] += mu / p[0] ** 2
    H[1, 1] += mu / p[1] ** 2
    return f, g, (H + H.T) / 2


def _barrier_newton(sigma: np.ndarray, p0: np.ndarray, cfg: SolverConfig) -> tuple[np.ndarray, int, float]:
    p = np.array(p0, dtype=float)
    mu = cfg.mu_start
    steps = 0
    t_prev = 1.0
    while True:
        for _ in range(cfg.max_newton):
            model = _barrier_model(p, sigma, mu)
            if model is None:
                break
            f, g, H = model
            w, V = np.linalg.eigh(H)
            w = np.maximum(np.abs(w), 1e-12 * np.max(np.abs(w)))
            step = -(V / w) @ (V.T @ g)
            dec = -g @ step
            steps += 1
            if dec < 1e-3 * mu:
                break
            t = min(1.0, 4.0 * t_prev)
            while t > 1e-14 and _barrier_value(p + t * step, sigma, mu) > f - 1e-4 * t * dec:
                t *= 0.5
            if t <= 1e-14:
                break
            p = p + t * step
            t_prev = t
        if mu <= cfg.mu_final:
            break
        mu = max(mu * cfg.mu_shrink, cfg.mu_final)
    return p, steps, mu


def _strictly_feasible(sigma, p):
    return p[0] > 0 and p[1] > 0 and np.linalg.eigvalsh(sigma - pure_state(p))[0] > 0


def _interior_start(sigma: np.ndarray, pi0: np.ndarray) -> np.ndarray | None:
    """Chart point of ``pi0`` with zero squeezings nudged into ``r > 0``."""
    p = chart_from_pure(pi0)
    bump = 1e-3
    while bump > 1e-14:
        q = p.copy()
        q[:2] = np.maximum(q[:2], bump)
        if _strictly_feasible(sigma, q):
            return q
        bump *= 0.1
    return None


def _random_feasible_pure(S: np.ndarray, nu_min: float, rng: np.random.Generator) -> np.ndarray:
    rmax = 0.5 * np.log(nu_min) * 0.999
    rho = rng.uniform(-rmax, rmax, 2)
    K = passive_from_angles(rng.uniform(0.0, 2 * np.pi, 4))
    return S @ ((K * squeeze_diag(rho[0], rho[1])) @ K.T) @ S.T


def _sof_face(sigma: np.ndarray, S: np.ndarray, nu2: float) -> tuple[np.ndarray, int]:
    """Minimize over ``S (1 (+) tau) S^T`` with ``tau <= nu2 I`` single-mode pure."""
    tmax = 0.5 * np.log(max(nu2, 1.0))

    def state(q):
        c, s = np.cos(q[1]), np.sin(q[1])
        R = np.array([[c, s], [-s, c]])
        tau = (R * np.exp([-2 * q[0], 2 * q[0]])) @ R.T
        inner = np.eye(4)
        inner[2:, 2:] = tau
        return S @ inner @ S.T

    def obj(q):
        w = np.linalg.eigvalsh(state(q))
        return 0.5 * np.sum(np.log(np.maximum(w[2:], 1e-300)))

    if tmax <= 0.0:
        return state(np.zeros(2)), 0
    ts = np.linspace(0.0, tmax, 41)
    phis = np.linspace(0.0, np.pi, 72, endpoint=False)
    vals = np.array([[obj((t, f)) for f in phis] for t in ts])
    i, j = np.unravel_index(np.argmin(vals), vals.shape)
    res = minimize(obj, [ts[i], phis[j]], method="Nelder-Mead",
                   bounds=[(0.0, tmax), (phis[j] - 0.2, phis[j] + 0.2)],
                   options={"xatol": 1e-12, "fatol": 1e-15, "maxiter": 4000})
    q = res.x if res.fun <= vals[i, j] else np.array([ts[i], phis[j]])
    return state(q), int(res.nit)


def sof_mixed(sigma: np.ndarray, cfg: SolverConfig = DEFAULT_SOLVER, seed: int = 0,
              tol: Tolerances = DEFAULT_TOL) -> SofResult:
    """SOF of a two-mode state with an optimal pure witness.

    Parameters
    ----------
    sigma : ndarray
        Physical two-mode covariance matrix.
    cfg : SolverConfig
        Barrier schedule and number of restarts.
    seed : int
        Seed for the perturbed starting points.

    Returns
    -------
    SofResult
        ``value`` is ``sof_pure(witness.pi)``; ``witness.phi`` is positive
        semidefinite up to rounding.
    """
    sigma = np.asarray(sigma, dtype=float)
    if sigma.shape != (4, 4):
        raise WrongModeCount("sof_mixed works on two-mode states")
    sigma = (sigma + sigma.T) / 2
    if abs(np.linalg.det(sigma) - 1.0) <= tol.tol_pure:
        return SofResult(sof_pure(sigma, tol), PureDecomposition.from_pure(sigma, sigma), 0, 0, 0.0, "pure")

    wl = williamson(sigma)
    S, nu = wl.S, wl.nu
    if nu[0] - 1.0 <= cfg.face_gap:
        pi, nit = _sof_face(sigma, S, nu[1])
        return SofResult(sof_pure(pi, tol), PureDecomposition.from_pure(sigma, pi), nit, 1, 0.0, "face")

    rng = np.random.default_rng(seed)
    best, best_val, total, runs = None, np.inf, 0, 0
    final_mu = cfg.mu_final
    seeds = [S @ S.T]
    if nu[0] - 1.0 <= cfg.near_face_gap:
        seeds.append(_sof_face(sigma, S, nu[1])[0])
    seeds += [None] * (max(1, cfg.restarts) - 1)  # random feasible seeds
    for pi0 in seeds:
        pi0 = _random_feasible_pure(S, nu[0], rng) if pi0 is None else pi0
        p0 = _interior_start(sigma, pi0)
        if p0 is None:
            continue
        p, steps, final_mu = _barrier_newton(sigma, p0, cfg)
        total += steps
        runs += 1
        if p[0] + p[1] < best_val:
            best, best_val = p, p[0] + p[1]
    if best is None:
        raise OptimizerFailed("no strictly feasible starting point", {"restarts": cfg.restarts})
    pi = pure_state(best)
    value = float(max(best_val, 0.0))
    return SofResult(value, PureDecomposition.from_pure(sigma, pi), total, runs,
                     _BARRIER_DEGREE * final_mu, "barrier")
