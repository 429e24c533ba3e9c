"""Gaussian entanglement of formation of two-mode states.

Route used by :func:`gaussian_eof`:

1. Local symplectic ``L`` brings ``sigma`` to standard form
   ``[[a, 0, c1, 0], [0, a, 0, c2], [c1, 0, b, 0], [0, c2, 0, b]]``;
   EOF is invariant under local symplectics.
2. In ``(x1, x2 | p1, p2)`` order the standard form is ``Cq (+) Cp`` with
   ``Cq = [[a, c1], [c1, b]]`` and ``Cp = [[a, c2], [c2, b]]``. The optimal
   pure state is taken of the matching form ``C (+) C^-1``, which lies
   below ``sigma`` iff ``Cp^-1 <= C <= Cq``. Its EOF is ``g(sqrt(m))`` with
   ``m = C11 C22 / det C = 1 / (1 - rho^2)``, ``rho`` the correlation
   coefficient of ``C``.
3. Adding a positive diagonal to ``C`` lowers ``rho``, so at the optimum
   ``Cq - C`` is rank one: ``C = Cq - u u^T`` with ``u^T G^-1 u <= 1``,
   ``G = Cq - Cp^-1``. Writing ``u = G^(1/2) w`` leaves a search over the
   unit disk ``|w| <= 1`` (coarse polar grid, then L-BFGS-B polish).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from ..config import DEFAULT_SOLVER, DEFAULT_TOL, SolverConfig, Tolerances
from ..errors import NotPure, WrongModeCount
from ..gaussian_core import is_separable, partial_transpose, symplectic_eigenvalues
from .auxiliary import entropy_g, h
from .witness import PureDecomposition


def eof_pure(pi: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> float:
    """EOF of a pure two-mode state, ``h(nu_min(pi^Gamma))`` or zero if PPT."""
    pi = np.asarray(pi, dtype=float)
    if pi.shape != (4, 4):
        raise WrongModeCount("eof_pure works on two-mode states")
    if abs(np.linalg.det(pi) - 1.0) > tol.tol_pure:
        raise NotPure(f"det = {np.linalg.det(pi):.12g}")
    nu = symplectic_eigenvalues(partial_transpose(pi))[0]
    if nu >= 1.0:
        return 0.0
    return h(nu)


def _sqrt2(A: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh((A + A.T) / 2)
    return (v * np.sqrt(np.maximum(w, 0.0))) @ v.T


def standard_form(sigma: np.ndarray):
    """Local symplectic reduction to standard form.

    Returns
    -------
    a, b, c1, c2 : float
        Standard-form entries with ``c1 >= |c2|``.
    L : ndarray
        Block-diagonal symplectic with ``L sigma L^T`` in standard form.
    """
    sigma = np.asarray(sigma, dtype=float)
    A, B, C = sigma[:2, :2], sigma[2:, 2:], sigma[:2, 2:]
    a, b = np.sqrt(np.linalg.det(A)), np.sqrt(np.linalg.det(B))
    # local Williamson: SA^-1 A SA^-T = a I with SA = (A/a)^(1/2)
    SA, SB = _sqrt2(A / a), _sqrt2(B / b)
    Cn = np.linalg.solve(SA, C) @ np.linalg.inv(SB).T
    U, d, Vt = np.linalg.svd(Cn)
    d = d.copy()
    if np.linalg.det(U) < 0:
        U[:, 1] *= -1
        d[1] *= -1
    if np.linalg.det(Vt) < 0:
        Vt[1, :] *= -1
        d[1] *= -1
    L = np.zeros((4, 4))
    L[:2, :2] = U.T @ np.linalg.inv(SA)
    L[2:, 2:] = Vt @ np.linalg.inv(SB)
    return a, b, d[0], d[1], L


def _log_m(Cq, Gh, s, phi):
    w0, w1 = s * np.cos(phi), s * np.sin(phi)
    u0 = Gh[0, 0] * w0 + Gh[0, 1] * w1
    u1 = Gh[1, 0] * w0 + Gh[1, 1] * w1
    x = Cq[0, 0] - u0 * u0
    y = Cq[1, 1] - u1 * u1
    z = Cq[0, 1] - u0 * u1
    return np.log(x * y) - np.log(x * y - z * z)


def _log_m_and_grad(q, Cq, Gh):
    s, phi = q
    c, sn = np.cos(phi), np.sin(phi)
    u = Gh @ np.array([s * c, s * sn])
    x = Cq[0, 0] - u[0] ** 2
    y = Cq[1, 1] - u[1] ** 2
    z = Cq[0, 1] - u[0] * u[1]
    det = x * y - z * z
    # partials of log m in (x, y, z), then chain through u
    fx, fy, fz = 1 / x - y / det, 1 / y - x / det, 2 * z / det
    gu = np.array([-2 * u[0] * fx - u[1] * fz, -2 * u[1] * fy - u[0] * fz])
    du = np.column_stack([Gh @ np.array([c, sn]), Gh @ np.array([-s * sn, s * c])])
    return np.log(x * y) - np.log(det), gu @ du


@dataclass(frozen=True)
class EofResult:
    """Value, witness and diagnostics of :func:`gaussian_eof`.

    ``achieved_tolerance`` is the projected gradient norm of ``log m`` in
    the disk coordinates at the returned point.
    """

    value: float
    witness: PureDecomposition | None
    iterations: int
    achieved_tolerance: float


def _witness(Cq: np.ndarray, Gh: np.ndarray, s: float, phi: float, L: np.ndarray,
             sigma: np.ndarray) -> PureDecomposition:
    u = Gh @ np.array([s * np.cos(phi), s * np.sin(phi)])
    C = Cq - np.outer(u, u)
    Ci = np.linalg.inv(C)
    pi_std = np.zeros((4, 4))
    pi_std[0::2, 0::2] = C
    pi_std[1::2, 1::2] = (Ci + Ci.T) / 2
    Linv = np.linalg.inv(L)
    return PureDecomposition.from_pure(sigma, Linv @ pi_std @ Linv.T)


def gaussian_eof(sigma: np.ndarray, cfg: SolverConfig = DEFAULT_SOLVER, tol: Tolerances = DEFAULT_TOL,
                 witness: bool = True) -> EofResult:
    """Gaussian EOF of a two-mode state.

    Separable states return zero without a search when ``witness`` is
    false; otherwise the disk search also supplies the optimal pure state.
    """
    sigma = np.asarray(sigma, dtype=float)
    if sigma.shape != (4, 4):
        raise WrongModeCount("gaussian_eof works on two-mode states")
    sigma = (sigma + sigma.T) / 2
    separable = is_separable(sigma, tol)
    if separable and not witness:
        return EofResult(0.0, None, 0, 0.0)

    a, b, c1, c2, L = standard_form(sigma)
    Cq = np.array([[a, c1], [c1, b]])
    Cp = np.array([[a, c2], [c2, b]])
    Gh = _sqrt2(Cq - np.linalg.inv(Cp))

    ns, nphi = cfg.eof_grid
    S, P = np.meshgrid(np.linspace(0.0, 1.0, ns), np.linspace(0.0, np.pi, nphi, endpoint=False),
                       indexing="ij")
    V = _log_m(Cq, Gh, S, P)
    i, j = np.unravel_index(np.argmin(V), V.shape)
    s0, p0, best = S[i, j], P[i, j], V[i, j]
    dphi = np.pi / nphi
    res = minimize(_log_m_and_grad, [s0, p0], args=(Cq, Gh), jac=True, method="L-BFGS-B",
                   bounds=[(0.0, 1.0), (p0 - 2 * dphi, p0 + 2 * dphi)],
                   options={"ftol": 1e-16, "gtol": 1e-14, "maxiter": 500})
    if res.fun < best:
        s0, p0, best = res.x[0], res.x[1], float(res.fun)
    m = float(np.exp(max(best, 0.0)))
    value = 0.0 if separable else entropy_g(np.sqrt(m))
    wit = _witness(Cq, Gh, s0, p0, L, sigma) if witness else None
    # first-order residual: gradient in disk coordinates projected on the bounds
    g = np.array(res.jac, dtype=float) if res.jac is not None else np.zeros(2)
    if (s0 >= 1.0 - 1e-12 and g[0] < 0) or (s0 <= 1e-12 and g[0] > 0):
        g[0] = 0.0
    return EofResult(value, wit, int(res.nit), float(np.linalg.norm(g)))
