"""Covariance-matrix data model and basic predicates.

Conventions used throughout the package:

* quadratures are ordered ``(x1, p1, x2, p2, ...)``;
* the vacuum covariance matrix is the identity, so a state is physical
  iff its smallest symplectic eigenvalue is at least one;
* mode indices are zero-based.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import IndexOutOfRange, InvalidState, NonPositiveDefinite, WrongModeCount

OMEGA_1 = np.array([[0.0, 1.0], [-1.0, 0.0]])

# (row, col) of the x-p cross entries in the upper triangle, two-mode layout
CROSS_ENTRIES = ((0, 1), (0, 3), (1, 2), (2, 3))


def n_modes_of(A: np.ndarray) -> int:
    """Number of modes of a ``2N x 2N`` matrix."""
    d = A.shape[0]
    if A.ndim != 2 or A.shape[1] != d or d % 2:
        raise WrongModeCount(f"expected a 2N x 2N matrix, got shape {A.shape}")
    return d // 2


def symplectic_form(n_modes: int) -> np.ndarray:
    """Block-diagonal symplectic form with blocks ``[[0, 1], [-1, 0]]``."""
    if n_modes < 1:
        raise WrongModeCount("n_modes must be positive")
    return np.kron(np.eye(n_modes), OMEGA_1)


def symplectic_eigenvalues(sigma: np.ndarray) -> np.ndarray:
    """Symplectic eigenvalues in ascending order.

    They are the positive eigenvalues of ``i Omega sigma``. The spectrum is
    read off the Hermitian matrix ``i sigma^(1/2) Omega sigma^(1/2)``, which
    is similar to ``i Omega sigma`` and has exactly paired eigenvalues
    ``+-nu_j``.

    Parameters
    ----------
    sigma : ndarray
        Symmetric positive-definite ``2N x 2N`` matrix.

    Returns
    -------
    ndarray
        ``N`` values ``nu_1 <= ... <= nu_N``.
    """
    sigma = np.asarray(sigma, dtype=float)
    n = n_modes_of(sigma)
    w, v = np.linalg.eigh(sigma)
    if w[0] <= 1e-12:
        raise NonPositiveDefinite(f"smallest eigenvalue {w[0]:.3e}")
    root = (v * np.sqrt(w)) @ v.T
    herm = 1j * root @ symplectic_form(n) @ root
    ev = np.linalg.eigvalsh(herm)
    return ev[n:]


def partial_transpose(sigma: np.ndarray) -> np.ndarray:
    """Flip the sign of ``p2``: ``Lambda sigma Lambda`` with ``Lambda = diag(1, 1, 1, -1)``."""
    sigma = np.asarray(sigma, dtype=float)
    if sigma.shape != (4, 4):
        raise WrongModeCount("partial transpose is defined here for two modes")
    lam = np.array([1.0, 1.0, 1.0, -1.0])
    return sigma * np.outer(lam, lam)


def is_symmetric(A: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> bool:
    return bool(np.max(np.abs(A - A.T)) <= tol.tol_sym)


def is_physical(sigma: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True if ``sigma`` is symmetric and satisfies ``nu_min >= 1 - tol_phys``."""
    sigma = np.asarray(sigma, dtype=float)
    if not is_symmetric(sigma, tol):
        return False
    try:
        return bool(symplectic_eigenvalues(sigma)[0] >= 1.0 - tol.tol_phys)
    except NonPositiveDefinite:
        return False


def is_pure(sigma: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True if ``det sigma = 1`` within ``tol_pure``."""
    return bool(abs(np.linalg.det(sigma) - 1.0) <= tol.tol_pure)


def is_separable(sigma: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> bool:
    """PPT test for a two-mode state."""
    return bool(symplectic_eigenvalues(partial_transpose(sigma))[0] >= 1.0 - tol.tol_sep)


def cross_entries(sigma: np.ndarray) -> np.ndarray:
    """The four independent x-p cross entries of a two-mode matrix."""
    sigma = np.asarray(sigma, dtype=float)
    if sigma.shape != (4, 4):
        raise WrongModeCount("cross entries are defined for two modes")
    return np.array([sigma[i, j] for i, j in CROSS_ENTRIES])


def is_de_cross_correlated(sigma: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True if every x-p cross entry is below ``tol_dcc`` in magnitude."""
    return bool(np.max(np.abs(cross_entries(sigma))) <= tol.tol_dcc)


@dataclass(frozen=True)
class SpectralData:
    """Eigen-decomposition with eigenvalues in descending order.

    ``eigenvectors[:, j]`` pairs with ``eigenvalues[j]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.T


def spectrum(A: np.ndarray, tie_tol: float = 1e-12) -> SpectralData:
    """Descending eigen-decomposition of a symmetric matrix.

    Each eigenvector is signed so that its first component above ``1e-12``
    in magnitude is positive. Eigenvalues closer than ``tie_tol`` (relative
    to the spectral scale) are ordered by lexicographic comparison of their
    eigenvectors, largest first.
    """
    A = np.asarray(A, dtype=float)
    w, v = np.linalg.eigh((A + A.T) / 2)
    w, v = w[::-1], v[:, ::-1].copy()
    for j in range(v.shape[1]):
        nz = np.flatnonzero(np.abs(v[:, j]) > 1e-12)
        if nz.size and v[nz[0], j] < 0:
            v[:, j] *= -1
    scale = max(1.0, float(np.max(np.abs(w)))) if w.size else 1.0
    order = list(range(len(w)))
    start = 0
    while start < len(w):
        stop = start + 1
        while stop < len(w) and w[start] - w[stop] <= tie_tol * scale:
            stop += 1
        if stop - start > 1:
            group = sorted(range(start, stop), key=lambda j: tuple(v[:, j]), reverse=True)
            order[start:stop] = group
        start = stop
    return SpectralData(eigenvalues=w[order], eigenvectors=v[:, order])


def add_vacuum_mode(sigma: np.ndarray) -> np.ndarray:
    """Append a vacuum mode: ``sigma (+) I_2``."""
    sigma = np.asarray(sigma, dtype=float)
    d = sigma.shape[0]
    out = np.eye(d + 2)
    out[:d, :d] = sigma
    return out


def trace_out_mode(sigma: np.ndarray, mode: int) -> np.ndarray:
    """Delete the two rows and columns of ``mode``."""
    sigma = np.asarray(sigma, dtype=float)
    n = n_modes_of(sigma)
    if n < 2:
        raise WrongModeCount("cannot trace out the only mode")
    if not 0 <= mode < n:
        raise IndexOutOfRange(f"mode {mode} not in [0, {n})")
    keep = [k for k in range(2 * n) if k // 2 != mode]
    return sigma[np.ix_(keep, keep)]


def is_symplectic(K: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> bool:
    K = np.asarray(K, dtype=float)
    om = symplectic_form(n_modes_of(K))
    return bool(np.max(np.abs(K @ om @ K.T - om)) <= tol.tol_symplectic)


def is_passive(K: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> bool:
    K = np.asarray(K, dtype=float)
    return is_symplectic(K, tol) and bool(
        np.max(np.abs(K @ K.T - np.eye(K.shape[0]))) <= tol.tol_symplectic
    )


def validate_state(matrix, tol: Tolerances = DEFAULT_TOL, n_modes: int | None = None) -> np.ndarray:
    """Check the covariance-matrix invariants and return a float array.

    Raises
    ------
    InvalidState
        Naming the first invariant that fails: ``shape``, ``n_modes``,
        ``finite``, ``symmetry``, ``positive_definite`` or ``physicality``.
    """
    A = np.asarray(matrix, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] % 2 or A.shape[0] == 0:
        raise InvalidState("shape", f"expected a 2N x 2N matrix, got {A.shape}")
    if n_modes is not None and A.shape[0] != 2 * n_modes:
        raise InvalidState("n_modes", f"n_modes={n_modes} but matrix is {A.shape[0]}x{A.shape[0]}")
    if not np.all(np.isfinite(A)):
        raise InvalidState("finite", "matrix has non-finite entries")
    asym = float(np.max(np.abs(A - A.T)))
    if asym > tol.tol_sym:
        raise InvalidState("symmetry", f"max |sigma - sigma^T| = {asym:.3e} > {tol.tol_sym:.1e}")
    A = (A + A.T) / 2
    try:
        nu = symplectic_eigenvalues(A)
    except NonPositiveDefinite as exc:
        raise InvalidState("positive_definite", str(exc)) from None
    if nu[0] < 1.0 - tol.tol_phys:
        raise InvalidState("physicality", f"smallest symplectic eigenvalue {nu[0]:.12g} < 1")
    return A


@dataclass(frozen=True)
class CovarianceMatrix:
    """Validated, read-only covariance matrix with JSON round-tripping."""

    matrix: np.ndarray

    def __post_init__(self):
        A = validate_state(self.matrix)
        A.setflags(write=False)
        object.__setattr__(self, "matrix", A)

    @property
    def n_modes(self) -> int:
        return self.matrix.shape[0] // 2

    def to_dict(self) -> dict:
        return {"n_modes": self.n_modes, "matrix": self.matrix.tolist()}

    @classmethod
    def from_dict(cls, data: dict, tol: Tolerances = DEFAULT_TOL) -> "CovarianceMatrix":
        if "matrix" not in data or "n_modes" not in data:
            raise InvalidState("schema", "expected keys 'n_modes' and 'matrix'")
        return cls(validate_state(data["matrix"], tol, n_modes=int(data["n_modes"])))


def load_state(path: str | Path, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Read a JSON state file and return its validated matrix."""
    with open(path) as fh:
        data = json.load(fh)
    return np.array(CovarianceMatrix.from_dict(data, tol).matrix)


def save_state(sigma: np.ndarray, path: str | Path) -> None:
    sigma = np.asarray(sigma, dtype=float)
    with open(path, "w") as fh:
        json.dump({"n_modes": sigma.shape[0] // 2, "matrix": sigma.tolist()}, fh, indent=2)
