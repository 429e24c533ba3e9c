"""Six-parameter chart of pure two-mode states with analytic derivatives.

A pure state is written ``pi = K(a) Z(r) K(a)^T`` with

* ``Z(r) = diag(e^-2r1, e^2r1, e^-2r2, e^2r2)``,
* ``K(a) = (R(a0) (+) R(a1)) B(a2) (R(a3) (+) I)``, where ``R`` is a phase
  rotation and ``B(t) = [[cos t I, sin t I], [-sin t I, cos t I]]``.

The passive part covers all of U(2), so every pure two-mode state has a
preimage with ``r1, r2 >= 0`` and ``SOF(pi) = r1 + r2``.
"""

from __future__ import annotations

import numpy as np

from ..decompositions import diagonalize_pure, passive_to_unitary
from ..transforms import rotation

_OM1 = np.array([[0.0, 1.0], [-1.0, 0.0]])
_Z2 = np.zeros((2, 2))
_I2 = np.eye(2)


def _blk(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    M = np.zeros((4, 4))
    M[:2, :2] = A
    M[2:, 2:] = B
    return M


def _rot(t: float) -> np.ndarray:
    c, s = np.cos(t), np.sin(t)
    return np.array([[c, s], [-s, c]])


_MIX_S = np.kron(_OM1, _I2)


def _mixer(t: float) -> np.ndarray:
    return np.cos(t) * np.eye(4) + np.sin(t) * _MIX_S


def _mixer_prime(t: float) -> np.ndarray:
    return -np.sin(t) * np.eye(4) + np.cos(t) * _MIX_S


def passive_from_angles(a: np.ndarray) -> np.ndarray:
    return _blk(_rot(a[0]), _rot(a[1])) @ _mixer(a[2]) @ _blk(_rot(a[3]), _I2)


def squeeze_diag(r1: float, r2: float) -> np.ndarray:
    return np.exp(np.array([-2 * r1, 2 * r1, -2 * r2, 2 * r2]))


def pure_state(p: np.ndarray) -> np.ndarray:
    """Covariance matrix at chart point ``p = (r1, r2, a0, a1, a2, a3)``."""
    K = passive_from_angles(p[2:6])
    return (K * squeeze_diag(p[0], p[1])) @ K.T


def pure_state_derivatives(p: np.ndarray):
    """State, first and second derivatives with respect to the chart.

    Returns
    -------
    pi : ndarray, shape (4, 4)
    d : ndarray, shape (6, 4, 4)
        ``d[k] = d pi / d p_k``.
    dd : ndarray, shape (6, 6, 4, 4)
        ``dd[k, l] = d^2 pi / d p_k d p_l``.
    """
    a = p[2:6]
    R0, R1, R3 = _rot(a[0]), _rot(a[1]), _rot(a[3])
    F0, F1, F2 = _blk(R0, R1), _mixer(a[2]), _blk(R3, _I2)
    F1p = _mixer_prime(a[2])
    F0a, F0b = _blk(R0 @ _OM1, _Z2), _blk(_Z2, R1 @ _OM1)
    F2p = _blk(R3 @ _OM1, _Z2)
    F12 = F1 @ F2
    F1pF2, F1F2p = F1p @ F2, F1 @ F2p
    K = F0 @ F12
    # derivatives of K with respect to a0..a3
    dK = np.stack([F0a @ F12, F0b @ F12, F0 @ F1pF2, F0 @ F1F2p])
    ddK = np.zeros((4, 4, 4, 4))
    ddK[0, 0] = _blk(-R0, _Z2) @ F12
    ddK[1, 1] = _blk(_Z2, -R1) @ F12
    ddK[0, 2] = ddK[2, 0] = F0a @ F1pF2
    ddK[0, 3] = ddK[3, 0] = F0a @ F1F2p
    ddK[1, 2] = ddK[2, 1] = F0b @ F1pF2
    ddK[1, 3] = ddK[3, 1] = F0b @ F1F2p
    ddK[2, 2] = -K
    ddK[2, 3] = ddK[3, 2] = F0 @ F1p @ F2p
    ddK[3, 3] = F0 @ F1 @ _blk(-R3, _Z2)
    z = squeeze_diag(p[0], p[1])
    dz = np.array([[-2 * z[0], 2 * z[1], 0.0, 0.0], [0.0, 0.0, -2 * z[2], 2 * z[3]]])
    ddz = 2 * np.abs(dz)

    def sym(G):
        return G + np.swapaxes(G, -1, -2)

    pi = (K * z) @ K.T
    d = np.empty((6, 4, 4))
    d[:2] = np.einsum("ij,kj,mj->kim", K, dz, K)
    d[2:] = sym(np.einsum("kij,j,mj->kim", dK, z, K))

    dd = np.zeros((6, 6, 4, 4))
    dd[0, 0] = (K * ddz[0]) @ K.T
    dd[1, 1] = (K * ddz[1]) @ K.T
    G = sym(np.einsum("lij,kj,mj->klim", dK, dz, K))
    dd[:2, 2:] = G
    dd[2:, :2] = np.swapaxes(G, 0, 1)
    dd[2:, 2:] = sym(np.einsum("klij,j,mj->klim", ddK, z, K) + np.einsum("kij,j,lmj->klim", dK, z, dK))
    return pi, d, dd


def angles_from_passive(K: np.ndarray) -> np.ndarray:
    """Chart angles of a two-mode passive matrix."""
    U = passive_to_unitary(K)
    c, s = abs(U[0, 0]), abs(U[0, 1])
    a2 = np.arctan2(s, c)
    if s < 1e-12:
        a0 = 0.0
        a3 = -np.angle(U[0, 0])
        a1 = -np.angle(U[1, 1])
    elif c < 1e-12:
        a3 = 0.0
        a0 = -np.angle(U[0, 1])
        a1 = -np.angle(-U[1, 0])
    else:
        a0 = -np.angle(U[0, 1])
        a3 = -np.angle(U[0, 0]) - a0
        a1 = -np.angle(U[1, 1])
    return np.array([a0, a1, a2, a3])


def chart_from_pure(pi: np.ndarray) -> np.ndarray:
    """Chart point ``(r1, r2, a0..a3)`` with ``r1, r2 >= 0`` for a pure state."""
    Kd, _, r = diagonalize_pure(pi)
    # Kd pi Kd^T = R Z R^T with R the quarter turn on mode 1
    K = Kd.T @ rotation(np.pi / 2, 1, 2)
    return np.concatenate([r, angles_from_passive(K)])
