"""Williamson, Bloch-Messiah, polar and rectangular decompositions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .config import DEFAULT_TOL, Tolerances
from .errors import NonPositiveDefinite, NotPassive, NotPure, NotSymplectic, WrongModeCount
from .gaussian_core import is_passive, is_symplectic, n_modes_of, symplectic_form
from .transforms import TransformSpec, rotation

# symmetric-symplectic eigenvalues with |log w| below this are treated as 1
_CLUSTER_LOG = 1e-9


@dataclass(frozen=True)
class WilliamsonResult:
    """``sigma = S D S^T`` with ``D = diag(nu_1, nu_1, ..., nu_N, nu_N)`` ascending."""

    S: np.ndarray
    D: np.ndarray

    @property
    def nu(self) -> np.ndarray:
        return np.diag(self.D)[::2].copy()


@dataclass(frozen=True)
class BlochMessiahResult:
    """``S = K1 Z K2`` with passive ``K1, K2`` and ``Z = (+)_j diag(e^-r_j, e^r_j)``."""

    K1: np.ndarray
    Z: np.ndarray
    K2: np.ndarray
    r: np.ndarray


def _sym_sqrt(A: np.ndarray, inverse: bool = False) -> np.ndarray:
    w, v = np.linalg.eigh((A + A.T) / 2)
    if w[0] <= 0:
        raise NonPositiveDefinite(f"smallest eigenvalue {w[0]:.3e}")
    p = -0.5 if inverse else 0.5
    return (v * w**p) @ v.T


def williamson(sigma: np.ndarray) -> WilliamsonResult:
    """Williamson normal form of a positive-definite matrix.

    The real Schur form of the antisymmetric matrix
    ``sigma^(-1/2) Omega sigma^(-1/2)`` is block diagonal with blocks
    ``[[0, 1/nu_j], [-1/nu_j, 0]]``; its orthogonal factor ``Q`` gives
    ``S = sigma^(1/2) Q D^(-1/2)``.
    """
    sigma = np.asarray(sigma, dtype=float)
    n = n_modes_of(sigma)
    root = _sym_sqrt(sigma)
    iroot = _sym_sqrt(sigma, inverse=True)
    A = iroot @ symplectic_form(n) @ iroot
    T, Q = sla.schur((A - A.T) / 2, output="real")
    for k in range(n):
        if T[2 * k, 2 * k + 1] < 0:
            Q[:, [2 * k, 2 * k + 1]] = Q[:, [2 * k + 1, 2 * k]]
    T = Q.T @ A @ Q
    nu = 1.0 / np.array([T[2 * k, 2 * k + 1] for k in range(n)])
    order = np.argsort(nu, kind="stable")
    idx = np.array([2 * k + q for k in order for q in (0, 1)])
    Q, nu = Q[:, idx], nu[order]
    D = np.repeat(nu, 2)
    S = root @ Q / np.sqrt(D)
    return WilliamsonResult(S=S, D=np.diag(D))


def passive_to_unitary(K: np.ndarray) -> np.ndarray:
    """Complex ``N x N`` unitary acting on ``a_j = (x_j + i p_j)/sqrt(2)``."""
    return K[0::2, 0::2] + 1j * K[1::2, 0::2]


def unitary_to_passive(U: np.ndarray) -> np.ndarray:
    """Inverse of :func:`passive_to_unitary`."""
    n = U.shape[0]
    K = np.empty((2 * n, 2 * n))
    K[0::2, 0::2] = U.real
    K[0::2, 1::2] = -U.imag
    K[1::2, 0::2] = U.imag
    K[1::2, 1::2] = U.real
    return K


def _nearest_passive(K: np.ndarray) -> np.ndarray:
    W, _, Vh = np.linalg.svd(passive_to_unitary(K))
    return unitary_to_passive(W @ Vh)


def polar(S: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Polar decomposition ``S = K P`` of a symplectic matrix.

    Returns
    -------
    K : ndarray
        Orthogonal symplectic factor ``S P^-1``.
    P : ndarray
        ``(S^T S)^(1/2)``, symmetric positive definite and symplectic.
    """
    S = np.asarray(S, dtype=float)
    if not is_symplectic(S, tol):
        raise NotSymplectic("polar decomposition needs a symplectic matrix")
    w, v = np.linalg.eigh(S.T @ S)
    P = (v * np.sqrt(w)) @ v.T
    K = S @ ((v / np.sqrt(w)) @ v.T)
    return K, (P + P.T) / 2


def _diagonalize_symmetric_symplectic(P: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``P = W Z W^T`` for symmetric positive-definite symplectic ``P``.

    Eigenvectors ``u`` with eigenvalue ``e^r > 1`` pair with ``Omega u``
    (eigenvalue ``e^-r``); the passive ``W`` maps ``p_j`` to ``u_j`` and
    ``x_j`` to ``Omega u_j``. Eigenvalues numerically equal to one span an
    ``Omega``-invariant subspace, split into pairs by Gram-Schmidt.
    Returns ``W`` and ascending ``r``.
    """
    n = P.shape[0] // 2
    om = symplectic_form(n)
    w, v = np.linalg.eigh((P + P.T) / 2)
    logw = np.log(w)
    pos = np.flatnonzero(logw > _CLUSTER_LOG)
    unit = np.flatnonzero(np.abs(logw) <= _CLUSTER_LOG)
    pairs: list[tuple[float, np.ndarray]] = [(logw[j], v[:, j]) for j in pos]
    chosen: list[np.ndarray] = []
    for j in unit:
        b = v[:, j].copy()
        for c in chosen:
            b -= (c @ b) * c
        nb = np.linalg.norm(b)
        if nb < 1e-6 or len(pairs) >= n:
            continue
        b /= nb
        a = om @ b
        for c in chosen:
            a -= (c @ a) * c
        a /= np.linalg.norm(a)
        chosen.extend([a, b])
        pairs.append((0.0, b))
    if len(pairs) != n:
        raise NotSymplectic(f"could not pair the spectrum of P ({len(pairs)} of {n} pairs)")
    pairs.sort(key=lambda t: t[0])
    W = np.empty((2 * n, 2 * n))
    for k, (_, u) in enumerate(pairs):
        W[:, 2 * k] = om @ u
        W[:, 2 * k + 1] = u
    r = np.array([max(t[0], 0.0) for t in pairs])
    return _nearest_passive(W), r


def squeezing_diagonal(r: np.ndarray) -> np.ndarray:
    return np.diag(np.exp(np.column_stack([-r, r]).ravel()))


def bloch_messiah(S: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> BlochMessiahResult:
    """Euler decomposition ``S = K1 Z K2``.

    Built from the polar decomposition ``S = K P`` and the passive
    diagonalization ``P = W Z W^T``: ``K1 = K W``, ``K2 = W^T``. Squeezing
    parameters are returned in ascending order.
    """
    S = np.asarray(S, dtype=float)
    if not is_symplectic(S, tol):
        raise NotSymplectic("Bloch-Messiah decomposition needs a symplectic matrix")
    K, P = polar(S, tol)
    W, r = _diagonalize_symmetric_symplectic(P)
    return BlochMessiahResult(K1=K @ W, Z=squeezing_diagonal(r), K2=W.T, r=r)


def diagonalize_pure(pi: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Passive ``K`` bringing a pure two-mode state to ``pi_d(r1, r2)``.

    ``pi_d(r1, r2) = diag(e^-2r1, e^2r1, e^2r2, e^-2r2)``: mode 0 squeezed
    in ``x`` and mode 1 in ``p``, with ``r1 <= r2``.

    Returns
    -------
    K : ndarray
        Passive matrix with ``K pi K^T = pi_diag``.
    pi_diag : ndarray
        The diagonal state.
    r : ndarray
        ``(r1, r2)``.
    """
    pi = np.asarray(pi, dtype=float)
    if pi.shape != (4, 4):
        raise WrongModeCount("diagonalize_pure works on two-mode states")
    if abs(np.linalg.det(pi) - 1.0) > tol.tol_pure:
        raise NotPure(f"det = {np.linalg.det(pi):.12g}")
    # pi^(1/2) is itself symplectic for a pure state, so its Euler
    # decomposition reduces to the passive diagonalization of pi^(1/2)
    W, r = _diagonalize_symmetric_symplectic(_sym_sqrt(pi))
    K = rotation(np.pi / 2, 1, 2) @ W.T
    pi_diag = K @ pi @ K.T
    return K, (pi_diag + pi_diag.T) / 2, r


def _canonical_angle(t: float) -> float:
    t = float(np.mod(t, 2 * np.pi))
    return 0.0 if t >= 2 * np.pi - 1e-15 else t


def rectangular(K: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> list[TransformSpec]:
    """Decompose a passive matrix into beam splitters and phase rotations.

    The conjugate unitary ``U^H`` is reduced to a diagonal by Givens
    eliminations ``G = BS(tau) R_m(phi)`` acting on row pairs, giving
    ``U = D^H G_L ... G_1``. Each elimination step contributes one rotation
    and one beam splitter; identities are dropped. Specs are listed in
    application order, so ``compose([s.matrix(N) for s in specs])``
    reproduces ``K``.
    """
    K = np.asarray(K, dtype=float)
    n = n_modes_of(K)
    if not is_passive(K, tol):
        raise NotPassive("rectangular decomposition needs an orthogonal symplectic matrix")
    V = passive_to_unitary(K).conj().T
    specs: list[TransformSpec] = []
    for c in range(n - 1):
        for m in range(c + 1, n):
            a, b = V[c, c], V[m, c]
            if abs(b) < 1e-15:
                continue
            # rotation(phi) multiplies row c by e^{-i phi}; align phases of a and b
            phi = np.angle(a) - np.angle(b) if abs(a) > 1e-15 else 0.0
            tau = abs(a) ** 2 / (abs(a) ** 2 + abs(b) ** 2)
            if abs(_canonical_angle(phi)) > 1e-14:
                specs.append(TransformSpec("rotation", {"theta": _canonical_angle(phi)}, (c,)))
                V[c] *= np.exp(-1j * phi)
            G = np.array([[np.sqrt(tau), np.sqrt(1 - tau)], [-np.sqrt(1 - tau), np.sqrt(tau)]])
            specs.append(TransformSpec("beam_splitter", {"tau": float(tau)}, (c, m)))
            V[[c, m]] = G @ V[[c, m]]
    # U = D^H (...): D^H_jj = e^{-i arg V_jj} is rotation by arg V_jj
    for j in range(n):
        theta = _canonical_angle(np.angle(V[j, j]))
        if abs(theta) > 1e-14 and abs(theta - 2 * np.pi) > 1e-14:
            specs.append(TransformSpec("rotation", {"theta": theta}, (j,)))
    return specs
