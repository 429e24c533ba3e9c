"""Entropy-type auxiliary functions ``h``, ``h0`` and ``g``."""

from __future__ import annotations

import numpy as np
from scipy.special import xlogy

from ..errors import DomainError


def entropy_g(nu):
    """Von Neumann entropy of a thermal mode with symplectic eigenvalue ``nu``.

    ``g(nu) = (nu+1)/2 ln((nu+1)/2) - (nu-1)/2 ln((nu-1)/2)``, with
    ``g(1) = 0``.
    """
    nu = np.asarray(nu, dtype=float)
    if np.any(nu < 1.0 - 1e-12):
        raise DomainError("g is defined for nu >= 1")
    a = (nu + 1.0) / 2.0
    b = np.maximum(nu - 1.0, 0.0) / 2.0
    out = xlogy(a, a) - xlogy(b, b)
    return float(out) if out.ndim == 0 else out


def h(x):
    """``h(x) = A ln A - B ln B`` with ``A = (1+x)^2/4x`` and ``B = (1-x)^2/4x``.

    Defined on ``0 < x <= 1``; ``h(1) = 0``. ``B`` is formed directly from
    ``(1-x)^2`` and ``A = 1 + B`` enters through ``log1p`` so that both terms
    vanish near ``x = 1`` without cancellation.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0) or np.any(x > 1.0 + 1e-12):
        raise DomainError("h is defined on (0, 1]")
    x = np.minimum(x, 1.0)
    b = (1.0 - x) ** 2 / (4.0 * x)
    out = (1.0 + b) * np.log1p(b) - xlogy(b, b)
    return float(out) if out.ndim == 0 else out


def h0(s):
    """``h0(s) = h(e^-s)`` for ``s >= 0``; increasing in ``s``."""
    s = np.asarray(s, dtype=float)
    if np.any(s < 0.0):
        raise DomainError("h0 is defined for s >= 0")
    return h(np.exp(-s))
