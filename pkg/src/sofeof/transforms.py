"""Gaussian transformations as symplectic matrices.

>>> import numpy as np
>>> beam_splitter(0.5).round(4)
array([[ 0.7071,  0.    ,  0.7071,  0.    ],
       [ 0.    ,  0.7071,  0.    ,  0.7071],
       [-0.7071, -0.    ,  0.7071,  0.    ],
       [-0.    , -0.7071,  0.    ,  0.7071]])
>>> rotation(np.pi / 2).round(12) + 0.0
array([[ 0.,  1.],
       [-1.,  0.]])
>>> np.diag(local_squeezers(1.0, 2.0)).round(4)
array([0.3679, 2.7183, 7.3891, 0.1353])
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, IndexOutOfRange, ParamOutOfRange


def embed(block: np.ndarray, modes: Sequence[int], n_modes: int) -> np.ndarray:
    """Place a ``2k x 2k`` block acting on ``modes`` inside an ``n_modes`` identity."""
    modes = list(modes)
    if len(set(modes)) != len(modes):
        raise IndexOutOfRange(f"repeated mode in {modes}")
    for m in modes:
        if not 0 <= m < n_modes:
            raise IndexOutOfRange(f"mode {m} not in [0, {n_modes})")
    idx = np.array([2 * m + q for m in modes for q in (0, 1)])
    K = np.eye(2 * n_modes)
    K[np.ix_(idx, idx)] = block
    return K


def beam_splitter(tau: float, modes: Sequence[int] = (0, 1), n_modes: int = 2) -> np.ndarray:
    """Beam splitter of transmissivity ``tau`` on the pair ``modes``.

    On ``(x_i, p_i, x_j, p_j)`` this is
    ``[[sqrt(tau) I, sqrt(1 - tau) I], [-sqrt(1 - tau) I, sqrt(tau) I]]``.
    """
    if not 0.0 <= tau <= 1.0:
        raise ParamOutOfRange(f"tau={tau} outside [0, 1]")
    if len(modes) != 2:
        raise IndexOutOfRange("a beam splitter acts on two modes")
    a, b = np.sqrt(tau), np.sqrt(1.0 - tau)
    eye = np.eye(2)
    block = np.block([[a * eye, b * eye], [-b * eye, a * eye]])
    return embed(block, modes, n_modes)


def rotation(theta: float, mode: int = 0, n_modes: int = 1) -> np.ndarray:
    """Phase rotation ``[[cos, sin], [-sin, cos]]`` on one mode."""
    c, s = np.cos(theta), np.sin(theta)
    return embed(np.array([[c, s], [-s, c]]), [mode], n_modes)


def squeezer(r: float, mode: int = 0, n_modes: int = 1) -> np.ndarray:
    """Single-mode squeezer ``diag(e^-r, e^r)``."""
    return embed(np.diag([np.exp(-r), np.exp(r)]), [mode], n_modes)


def local_squeezers(r1: float, r2: float) -> np.ndarray:
    """``S(r1) (+) S(-r2) = diag(e^-r1, e^r1, e^r2, e^-r2)``."""
    return np.diag([np.exp(-r1), np.exp(r1), np.exp(r2), np.exp(-r2)])


def two_mode_squeezer(r: float) -> np.ndarray:
    """``K_bs diag(e^r, e^-r, e^-r, e^r) K_bs^T``."""
    kbs = beam_splitter(0.5)
    return kbs @ np.diag([np.exp(r), np.exp(-r), np.exp(-r), np.exp(r)]) @ kbs.T


def apply(K: np.ndarray, sigma: np.ndarray) -> np.ndarray:
    """Congruence ``K sigma K^T``."""
    K = np.asarray(K, dtype=float)
    sigma = np.asarray(sigma, dtype=float)
    if K.shape != sigma.shape:
        raise DimensionMismatch(f"K is {K.shape}, sigma is {sigma.shape}")
    out = K @ sigma @ K.T
    return (out + out.T) / 2


def compose(Ks: Sequence[np.ndarray], n_modes: int | None = None) -> np.ndarray:
    """Product of symplectic matrices, first element applied first.

    ``compose([A, B, C])`` returns ``C @ B @ A``. The raw product is
    returned without re-orthogonalization. An empty list gives the identity
    on ``n_modes`` modes (one mode if unspecified).
    """
    if len(Ks) == 0:
        return np.eye(2 * (n_modes or 1))
    d = np.asarray(Ks[0]).shape
    out = np.eye(d[0])
    for K in Ks:
        K = np.asarray(K, dtype=float)
        if K.shape != d:
            raise DimensionMismatch(f"cannot compose shapes {d} and {K.shape}")
        out = K @ out
    return out


_KINDS = {
    "beam_splitter": ("tau",),
    "rotation": ("theta",),
    "squeezer": ("r",),
    "local_squeezers": ("r1", "r2"),
    "two_mode_squeezer": ("r",),
}


@dataclass(frozen=True)
class TransformSpec:
    """Serializable description of one elementary transformation.

    ``kind`` is one of ``beam_splitter``, ``rotation``, ``squeezer``,
    ``local_squeezers`` or ``two_mode_squeezer``; ``params`` holds the named
    parameters (``tau``, ``theta``, ``r``, ``r1``, ``r2``) and ``modes`` the
    target modes.
    """

    kind: str
    params: dict = field(default_factory=dict)
    modes: tuple[int, ...] = (0,)

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ParamOutOfRange(f"unknown transform kind '{self.kind}'")
        missing = set(_KINDS[self.kind]) - set(self.params)
        if missing:
            raise ParamOutOfRange(f"{self.kind} needs parameters {sorted(missing)}")
        object.__setattr__(self, "modes", tuple(int(m) for m in self.modes))

    def matrix(self, n_modes: int) -> np.ndarray:
        p = self.params
        if self.kind == "beam_splitter":
            return beam_splitter(p["tau"], self.modes, n_modes)
        if self.kind == "rotation":
            return rotation(p["theta"], self.modes[0], n_modes)
        if self.kind == "squeezer":
            return squeezer(p["r"], self.modes[0], n_modes)
        block = (local_squeezers(p["r1"], p["r2"]) if self.kind == "local_squeezers"
                 else two_mode_squeezer(p["r"]))
        return embed(block, self.modes, n_modes)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": {k: float(v) for k, v in self.params.items()},
                "modes": list(self.modes)}

    @classmethod
    def from_dict(cls, data: dict) -> "TransformSpec":
        return cls(data["kind"], dict(data.get("params", {})), tuple(data.get("modes", (0,))))
