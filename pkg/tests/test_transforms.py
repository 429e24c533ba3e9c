import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import random_passive, random_state, seeds, tmsv
from sofeof.errors import DimensionMismatch, IndexOutOfRange, ParamOutOfRange
from sofeof.gaussian_core import is_passive, is_separable, is_symplectic, symplectic_eigenvalues
from sofeof.transforms import (TransformSpec, apply, beam_splitter, compose, local_squeezers, rotation,
                               squeezer, two_mode_squeezer)

taus = st.floats(0.0, 1.0)
angles = st.floats(-10.0, 10.0)
squeezings = st.floats(-2.0, 2.0)


class TestBeamSplitter:
    def test_identity_at_one(self):
        assert np.array_equal(beam_splitter(1.0), np.eye(4))

    def test_balanced_block_form(self):
        c = np.sqrt(0.5)
        expected = np.array([[c, 0, c, 0], [0, c, 0, c], [-c, 0, c, 0], [0, -c, 0, c]])
        assert np.allclose(beam_splitter(0.5), expected, atol=1e-15)
        assert np.allclose(beam_splitter(0.5) @ beam_splitter(0.5).T, np.eye(4), atol=1e-15)

    def test_vacuum_invariant(self):
        assert np.allclose(apply(beam_splitter(0.3), np.eye(4)), np.eye(4), atol=1e-15)

    @pytest.mark.parametrize("tau", [-0.1, 1.1, np.nan])
    def test_out_of_range(self, tau):
        with pytest.raises(ParamOutOfRange):
            beam_splitter(tau)

    def test_same_mode(self):
        with pytest.raises(IndexOutOfRange):
            beam_splitter(0.5, (1, 1), 3)

    def test_three_mode_embedding(self):
        K = beam_splitter(0.25, (0, 2), 3)
        assert np.array_equal(K[2:4, 2:4], np.eye(2))
        assert np.isclose(K[0, 4], np.sqrt(0.75)) and np.isclose(K[4, 0], -np.sqrt(0.75))

    @given(taus)
    def test_passive(self, tau):
        assert is_passive(beam_splitter(tau)) and is_passive(beam_splitter(tau, (2, 0), 3))


class TestRotation:
    def test_zero(self):
        assert np.array_equal(rotation(0.0), np.eye(2))

    def test_quarter_turn_swaps_quadratures(self):
        out = apply(rotation(np.pi / 2), np.diag([2.0, 5.0]))
        assert np.allclose(out, np.diag([5.0, 2.0]), atol=1e-14)

    @given(angles)
    def test_inverse(self, t):
        assert np.allclose(rotation(t, 1, 2) @ rotation(-t, 1, 2), np.eye(4), atol=1e-14)
        assert is_passive(rotation(t, 1, 2))


class TestSqueezers:
    def test_local_zero(self):
        assert np.array_equal(local_squeezers(0, 0), np.eye(4))

    def test_local_sign_convention(self):
        S = local_squeezers(0.3, 0.2)
        assert np.allclose(np.diag(S @ S.T), np.exp([-0.6, 0.6, 0.4, -0.4]))
        assert np.isclose(np.linalg.det(S), 1.0)

    def test_single_mode(self):
        assert np.allclose(squeezer(0.5), np.diag([np.exp(-0.5), np.exp(0.5)]))

    @given(squeezings)
    def test_squeezers_symmetric_pd_symplectic(self, r):
        for S in (squeezer(r, 1, 2), local_squeezers(r, -r / 2), two_mode_squeezer(r)):
            assert is_symplectic(S)
            assert np.allclose(S, S.T) and np.all(np.linalg.eigvalsh(S) > 0)

    def test_two_mode_zero(self):
        assert np.allclose(two_mode_squeezer(0.0), np.eye(4), atol=1e-15)

    @given(squeezings)
    def test_two_mode_inverse(self, r):
        assert np.allclose(two_mode_squeezer(r) @ two_mode_squeezer(-r), np.eye(4), atol=1e-10)

    @given(squeezings)
    def test_two_mode_identity(self, r):
        # S2(r) = K_bs S1(-r, r) K_bs^T written out entrywise
        c = np.sqrt(0.5)
        kbs = np.array([[c, 0, c, 0], [0, c, 0, c], [-c, 0, c, 0], [0, -c, 0, c]])
        s1 = np.diag([np.exp(r), np.exp(-r), np.exp(-r), np.exp(r)])
        assert np.max(np.abs(two_mode_squeezer(r) - kbs @ s1 @ kbs.T)) <= 1e-12

    def test_tmsv_state(self):
        s = apply(two_mode_squeezer(0.5), np.eye(4))
        assert np.allclose(s, tmsv(0.5), atol=1e-14)
        assert np.allclose(symplectic_eigenvalues(s), 1, atol=1e-12)
        assert not is_separable(s)


class TestApplyCompose:
    def test_identity(self):
        s = random_state(np.random.default_rng(1))
        assert np.array_equal(apply(np.eye(4), s), s)

    @given(seeds)
    def test_passive_preserves_trace_and_spectrum(self, seed):
        rng = np.random.default_rng(seed)
        s, K = random_state(rng), random_passive(2, rng)
        out = apply(K, s)
        assert abs(np.trace(out) - np.trace(s)) < 1e-9
        assert np.allclose(symplectic_eigenvalues(out), symplectic_eigenvalues(s), rtol=1e-9)

    def test_squeeze_round_trip(self):
        s = random_state(np.random.default_rng(2))
        back = apply(local_squeezers(-0.4, -0.9), apply(local_squeezers(0.4, 0.9), s))
        assert np.max(np.abs(back - s)) <= 1e-10

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            apply(np.eye(6), np.eye(4))
        with pytest.raises(DimensionMismatch):
            compose([np.eye(4), np.eye(6)])

    def test_empty_compose(self):
        assert np.array_equal(compose([], n_modes=2), np.eye(4))

    def test_compose_order(self):
        A, B = beam_splitter(0.3), rotation(0.7, 0, 2)
        assert np.allclose(compose([A, B]), B @ A)

    def test_compose_inverse(self):
        K = two_mode_squeezer(0.4) @ beam_splitter(0.2)
        assert np.allclose(compose([K, np.linalg.inv(K)]), np.eye(4), atol=1e-12)

    @given(seeds)
    def test_compose_twenty_passives(self, seed):
        rng = np.random.default_rng(seed)
        K = compose([random_passive(2, rng) for _ in range(20)])
        assert np.max(np.abs(K @ K.T - np.eye(4))) <= 1e-9


class TestTransformSpec:
    @pytest.mark.parametrize("spec", [
        TransformSpec("beam_splitter", {"tau": 0.3}, (0, 1)),
        TransformSpec("rotation", {"theta": 1.2}, (1,)),
        TransformSpec("squeezer", {"r": 0.4}, (0,)),
        TransformSpec("local_squeezers", {"r1": 0.1, "r2": 0.5}, (0, 1)),
        TransformSpec("two_mode_squeezer", {"r": 0.3}, (0, 1)),
    ])
    def test_json_round_trip(self, spec):
        data = json.loads(json.dumps(spec.to_dict()))
        assert set(data) == {"kind", "params", "modes"}
        back = TransformSpec.from_dict(data)
        assert np.array_equal(back.matrix(2), spec.matrix(2))
        assert is_symplectic(spec.matrix(2))
