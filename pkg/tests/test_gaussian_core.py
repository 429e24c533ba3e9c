import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import random_passive, random_state, seeds, tmsv
from sofeof.errors import IndexOutOfRange, InvalidState, NonPositiveDefinite, WrongModeCount
from sofeof.gaussian_core import (CovarianceMatrix, add_vacuum_mode, cross_entries, is_de_cross_correlated,
                                  is_passive, is_physical, is_pure, is_separable, is_symplectic, load_state,
                                  partial_transpose, save_state, spectrum, symplectic_eigenvalues,
                                  symplectic_form, trace_out_mode, validate_state)
from sofeof.transforms import apply, rotation


class TestSymplecticForm:
    def test_single_mode(self):
        assert np.array_equal(symplectic_form(1), [[0, 1], [-1, 0]])

    def test_two_modes_block_diagonal(self):
        O = symplectic_form(2)
        assert np.array_equal(O[:2, :2], O[2:, 2:]) and not O[:2, 2:].any()

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_square_is_minus_identity(self, n):
        O = symplectic_form(n)
        assert np.array_equal(O @ O, -np.eye(2 * n))


class TestSymplecticEigenvalues:
    def test_vacuum(self):
        assert np.allclose(symplectic_eigenvalues(np.eye(4)), [1, 1], atol=1e-12)

    def test_thermal(self):
        assert np.allclose(symplectic_eigenvalues(np.diag([3, 3, 5, 5.0])), [3, 5], atol=1e-12)

    def test_tmsv_is_pure(self):
        s = tmsv(0.8)
        assert abs(np.linalg.det(s) - 1) < 1e-9
        # independent route: moduli of eigenvalues of i Omega sigma
        ev = np.sort(np.abs(np.linalg.eigvals(1j * symplectic_form(2) @ s)))[::2]
        assert np.allclose(symplectic_eigenvalues(s), ev, atol=1e-9)
        assert np.allclose(ev, 1, atol=1e-9)

    def test_not_positive_definite(self):
        with pytest.raises(NonPositiveDefinite):
            symplectic_eigenvalues(np.diag([1, 1, 1, 0.0]))

    @given(seeds)
    def test_matches_eigvals_route(self, seed):
        s = random_state(np.random.default_rng(seed))
        ev = np.sort(np.abs(np.linalg.eigvals(1j * symplectic_form(2) @ s)))[::2]
        assert np.allclose(symplectic_eigenvalues(s), ev, rtol=1e-9)


class TestPartialTranspose:
    def test_vacuum(self):
        assert np.array_equal(partial_transpose(np.eye(4)), np.eye(4))

    @given(seeds)
    def test_involution(self, seed):
        s = random_state(np.random.default_rng(seed))
        assert np.array_equal(partial_transpose(partial_transpose(s)), s)

    def test_tmsv_spectrum(self):
        assert abs(symplectic_eigenvalues(partial_transpose(tmsv(0.5)))[0] - np.exp(-1.0)) < 1e-12

    def test_wrong_mode_count(self):
        with pytest.raises(WrongModeCount):
            partial_transpose(np.eye(6))


class TestPredicates:
    def test_vacuum_separable(self):
        assert is_separable(np.eye(4))

    def test_tmsv_entangled(self):
        assert not is_separable(tmsv(0.5))

    @given(st.floats(1e-3, 3.0))
    def test_tmsv_entangled_for_all_r(self, r):
        assert not is_separable(tmsv(r))

    def test_physical_and_pure(self):
        assert is_physical(np.eye(4)) and is_pure(np.eye(4))
        assert not is_physical(0.5 * np.eye(4))
        assert not is_pure(2 * np.eye(4))

    def test_dcc_examples(self):
        assert is_de_cross_correlated(np.diag([np.exp(-0.4), np.exp(0.4), np.exp(0.6), np.exp(-0.6)]))
        assert is_de_cross_correlated(apply(rotation(np.pi / 7, 0, 2), np.eye(4)))
        s = apply(rotation(np.pi / 4, 0, 2), tmsv(0.5))
        # mode-1 quarter-pi rotation moves x1 x2 correlation into p1 x2
        assert abs(s[1, 2]) > 0.1
        assert not is_de_cross_correlated(s)

    def test_cross_entries_positions(self):
        A = np.arange(16.0).reshape(4, 4)
        A = A + A.T
        assert np.array_equal(cross_entries(A), [A[0, 1], A[0, 3], A[1, 2], A[2, 3]])


class TestSpectrum:
    def test_diagonal(self):
        sp = spectrum(np.diag([0, 2, 0, 1.0]))
        assert np.allclose(sp.eigenvalues, [2, 1, 0, 0])

    def test_rank_one(self):
        v = np.array([1.0, -1.0, 1.0, 1.0])  # norm 2
        sp = spectrum(np.outer(v, v))
        assert np.allclose(sp.eigenvalues, [4, 0, 0, 0], atol=1e-12)
        assert np.allclose(sp.eigenvectors[:, 0], v / 2)

    @given(seeds)
    def test_reconstruction_and_order(self, seed):
        A = np.random.default_rng(seed).uniform(-10, 10, (4, 4))
        A = (A + A.T) / 2
        sp = spectrum(A)
        assert np.all(np.diff(sp.eigenvalues) <= 0)
        assert np.max(np.abs(sp.reconstruct() - A)) <= 1e-9
        assert np.allclose(sp.eigenvectors.T @ sp.eigenvectors, np.eye(4), atol=1e-12)

    def test_tie_sign_rule(self):
        sp = spectrum(np.eye(4))
        for j in range(4):
            v = sp.eigenvectors[:, j]
            assert v[np.flatnonzero(np.abs(v) > 1e-12)[0]] > 0


class TestModes:
    def test_add_vacuum(self):
        assert np.array_equal(add_vacuum_mode(np.eye(4)), np.eye(6))

    @given(seeds)
    def test_add_vacuum_trace_and_spectrum(self, seed):
        s = random_state(np.random.default_rng(seed))
        s3 = add_vacuum_mode(s)
        assert abs(np.trace(s3) - np.trace(s) - 2) < 1e-12
        assert np.allclose(symplectic_eigenvalues(s3), np.sort(np.r_[symplectic_eigenvalues(s), 1.0]))
        assert np.array_equal(trace_out_mode(s3, 2), s)

    def test_trace_out_tmsv(self):
        red = trace_out_mode(tmsv(0.5), 1)
        assert np.allclose(red, np.cosh(1.0) * np.eye(2))

    def test_trace_out_range(self):
        with pytest.raises(IndexOutOfRange):
            trace_out_mode(np.eye(4), 2)


class TestSymplecticChecks:
    @given(seeds)
    def test_random_passive(self, seed):
        K = random_passive(2, np.random.default_rng(seed))
        assert is_symplectic(K) and is_passive(K)

    def test_non_symplectic(self):
        assert not is_symplectic(np.diag([2, 1, 1, 1.0]))


class TestValidation:
    @pytest.mark.parametrize("matrix, invariant", [
        (np.eye(3), "shape"),
        (np.full((4, 4), np.nan), "finite"),
        (np.eye(4) + np.triu(np.ones((4, 4)), 1) * 1e-6, "symmetry"),
        (-np.eye(4), "positive_definite"),
        (0.9 * np.eye(4), "physicality"),
    ])
    def test_named_invariant(self, matrix, invariant):
        with pytest.raises(InvalidState) as exc:
            validate_state(matrix)
        assert exc.value.invariant == invariant

    def test_n_modes_mismatch(self):
        with pytest.raises(InvalidState) as exc:
            CovarianceMatrix.from_dict({"n_modes": 3, "matrix": np.eye(4).tolist()})
        assert exc.value.invariant == "n_modes"

    def test_immutable(self):
        cm = CovarianceMatrix(np.eye(4))
        with pytest.raises(ValueError):
            cm.matrix[0, 0] = 2.0

    def test_json_round_trip(self, tmp_path):
        s = random_state(np.random.default_rng(0))
        save_state(s, tmp_path / "s.json")
        assert np.array_equal(load_state(tmp_path / "s.json"), s)
        data = json.loads((tmp_path / "s.json").read_text())
        assert data["n_modes"] == 2 and len(data["matrix"]) == 4
