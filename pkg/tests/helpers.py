"""Shared random generators and hypothesis strategies."""

import numpy as np
from hypothesis import strategies as st

OMEGA2 = np.kron(np.eye(2), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    Z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def passive_of(U: np.ndarray) -> np.ndarray:
    """Real passive matrix of a unitary, written out independently of the package."""
    n = U.shape[0]
    K = np.zeros((2 * n, 2 * n))
    for j in range(n):
        for k in range(n):
            u, v = U[j, k].real, U[j, k].imag
            K[2 * j:2 * j + 2, 2 * k:2 * k + 2] = [[u, -v], [v, u]]
    return K


def random_passive(n: int, rng: np.random.Generator) -> np.ndarray:
    return passive_of(haar_unitary(n, rng))


def random_symplectic(n: int, rng: np.random.Generator, r_max: float = 1.5) -> np.ndarray:
    r = rng.uniform(-r_max, r_max, n)
    Z = np.diag(np.ravel([[np.exp(-x), np.exp(x)] for x in r]))
    return random_passive(n, rng) @ Z @ random_passive(n, rng)


def random_state(rng: np.random.Generator, n: int = 2, nu_max: float = 3.0, r_max: float = 1.5,
                 nu_min: float = 1.0) -> np.ndarray:
    nu = rng.uniform(nu_min, nu_max, n)
    S = random_symplectic(n, rng, r_max)
    s = S @ np.diag(np.repeat(nu, 2)) @ S.T
    return (s + s.T) / 2


def tmsv(r: float) -> np.ndarray:
    """Two-mode squeezed vacuum in closed form (x1 x2 correlation negative)."""
    c, s = np.cosh(2 * r), np.sinh(2 * r)
    return np.array([[c, 0, -s, 0], [0, c, 0, s], [-s, 0, c, 0], [0, s, 0, c]])


seeds = st.integers(min_value=0, max_value=2**32 - 1)
