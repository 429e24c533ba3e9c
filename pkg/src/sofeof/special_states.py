"""Six-parameter family of states whose EOF equals ``h0`` of their SOF.

``sigma_sp = K_bs (pi_d(r1, r2) + l1 v1 v1^T + l2 v2 v2^T) K_bs^T`` with the
unnormalized noise directions

    v1 = (alpha cos t, sin t, cos t, alpha sin t)
    v2 = (alpha sin t, -cos t, sin t, -alpha cos t)

and ``0 <= l1 <= l2``, ``|alpha| <= e^(-r1-r2)``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from scipy.optimize import least_squares

from .config import DEFAULT_TOL, Tolerances
from .errors import EmptyWindow, InvalidParams
from .gaussian_core import is_separable
from .transforms import apply, beam_splitter, local_squeezers, two_mode_squeezer

_ALPHA_SLACK = 1e-15


@dataclass(frozen=True)
class SpecialStateParams:
    r1: float
    r2: float
    lambda1: float
    lambda2: float
    alpha: float
    theta: float

    def __post_init__(self):
        vals = asdict(self)
        if not all(np.isfinite(v) for v in vals.values()):
            raise InvalidParams("parameters must be finite")
        if self.r1 < 0 or self.r2 < 0:
            raise InvalidParams("squeezing r1, r2 must be non-negative")
        if self.lambda1 < 0:
            raise InvalidParams("lambda1 must be non-negative")
        if self.lambda2 < self.lambda1:
            raise InvalidParams("ordering lambda2 >= lambda1 violated")
        bound = np.exp(-self.r1 - self.r2)
        if abs(self.alpha) > bound * (1 + _ALPHA_SLACK):
            raise InvalidParams(f"|alpha| = {abs(self.alpha):.6g} exceeds e^(-r1-r2) = {bound:.6g}")

    @classmethod
    def sample(cls, rng: np.random.Generator) -> "SpecialStateParams":
        """Random interior point: ``r ~ U[0.05, 1]``, ``l1 ~ U[0, 1]``,
        ``l2 = l1 + U[0, 1]``, ``theta ~ U[0, 2pi)``,
        ``alpha ~ 0.999 e^(-r1-r2) U[-1, 1]``."""
        r1, r2 = rng.uniform(0.05, 1.0, 2)
        l1 = rng.uniform(0.0, 1.0)
        l2 = l1 + rng.uniform(0.0, 1.0)
        theta = rng.uniform(0.0, 2 * np.pi)
        alpha = rng.uniform(-1.0, 1.0) * np.exp(-r1 - r2) * 0.999
        return cls(float(r1), float(r2), float(l1), float(l2), float(alpha), float(theta))


def phi_vectors(alpha: float, theta: float) -> tuple[np.ndarray, np.ndarray]:
    """The two orthogonal noise directions (not normalized)."""
    c, s = np.cos(theta), np.sin(theta)
    v1 = np.array([alpha * c, s, c, alpha * s])
    v2 = np.array([alpha * s, -c, s, -alpha * c])
    return v1, v2


def pi_d(r1: float, r2: float) -> np.ndarray:
    """``diag(e^-2r1, e^2r1, e^2r2, e^-2r2)``."""
    S = local_squeezers(r1, r2)
    return S @ S.T


def make_special(p: SpecialStateParams) -> np.ndarray:
    """Covariance matrix ``sigma_sp`` of the family."""
    v1, v2 = phi_vectors(p.alpha, p.theta)
    inner = pi_d(p.r1, p.r2) + p.lambda1 * np.outer(v1, v1) + p.lambda2 * np.outer(v2, v2)
    return apply(beam_splitter(0.5), inner)


def dcc_noise_matrix(alpha: float) -> np.ndarray:
    """``v1 v1^T + v2 v2^T``, independent of ``theta``."""
    a = alpha
    return np.array([[a * a, 0, a, 0], [0, 1, 0, a], [a, 0, 1, 0], [0, a, 0, a * a]], dtype=float)


def make_dcc(p: SpecialStateParams) -> np.ndarray:
    """``sigma_sp + (l2 - l1) K_bs v1 v1^T K_bs^T``, noise isotropic in ``theta``."""
    return apply(beam_splitter(0.5), pi_d(p.r1, p.r2) + p.lambda2 * dcc_noise_matrix(p.alpha))


def separability_window(p: SpecialStateParams) -> tuple[float, float]:
    """Interval of ``r`` for which ``S2(r) sigma_dcc S2(r)^T`` is separable.

    ``r_lo = (r1 + r2)/2`` and
    ``r_hi = 1/4 sum_j log[(l2 + e^(2 r_j)) / (1 + l2 alpha^2 e^(2 r_j))]``.
    """
    r_lo = (p.r1 + p.r2) / 2
    e = np.exp(2 * np.array([p.r1, p.r2]))
    r_hi = 0.25 * float(np.sum(np.log((p.lambda2 + e) / (1 + p.lambda2 * p.alpha**2 * e))))
    if r_hi < r_lo - 1e-12:
        raise EmptyWindow(f"r_hi = {r_hi:.12g} < r_lo = {r_lo:.12g}")
    return r_lo, max(r_hi, r_lo)


@dataclass(frozen=True)
class WindowCheck:
    """Outcome of :func:`verify_window_by_ppt`; truthy when the grid agrees."""

    ok: bool
    first_disagreement: float | None
    checked: int

    def __bool__(self) -> bool:
        return self.ok


def verify_window_by_ppt(p: SpecialStateParams, grid_points: int = 101, margin: float = 1e-6,
                         tol: Tolerances = DEFAULT_TOL) -> WindowCheck:
    """Compare PPT separability on an ``r`` grid with the closed-form window.

    The grid spans ``[0, r_hi + 0.5]``. Points within ``margin`` of either
    endpoint are not judged.
    """
    if grid_points < 3:
        raise InvalidParams("grid_points must be at least 3")
    r_lo, r_hi = separability_window(p)
    sigma = make_dcc(p)
    checked = 0
    for r in np.linspace(0.0, r_hi + 0.5, grid_points):
        if abs(r - r_lo) <= margin or abs(r - r_hi) <= margin:
            continue
        inside = r_lo < r < r_hi
        sep = is_separable(apply(two_mode_squeezer(r), sigma), tol)
        checked += 1
        if sep != inside:
            return WindowCheck(False, float(r), checked)
    return WindowCheck(True, None, checked)


def _unconstrained(q: np.ndarray) -> SpecialStateParams:
    r1, r2, a, b, c, theta = q
    r1, r2 = abs(r1), abs(r2)
    l1 = a * a
    return SpecialStateParams(float(r1), float(r2), float(l1), float(l1 + b * b),
                              float(np.exp(-r1 - r2) * np.tanh(c)), float(theta))


def membership_residual(sigma: np.ndarray, r_hint: tuple[float, float] | None = None,
                        n_theta: int = 12) -> tuple[float, SpecialStateParams]:
    """Least-squares fit of ``sigma`` to the family; returns the max-entry residual and the fit.

    Diagnostic only: a small residual shows membership, a large one may be
    a local minimum of the fit.
    """
    sigma = np.asarray(sigma, dtype=float)
    r0 = (0.5, 0.5) if r_hint is None else tuple(float(x) for x in r_hint)
    best = None
    for theta in np.linspace(0.0, 2 * np.pi, n_theta, endpoint=False):
        for c in (-1.0, 0.0, 1.0):
            res = least_squares(lambda q: (make_special(_unconstrained(q)) - sigma).ravel(),
                                [r0[0], r0[1], 0.5, 0.5, c, theta], xtol=1e-15, ftol=1e-15, gtol=1e-15)
            p = _unconstrained(res.x)
            err = float(np.max(np.abs(make_special(p) - sigma)))
            if best is None or err < best[0]:
                best = (err, p)
    return best
