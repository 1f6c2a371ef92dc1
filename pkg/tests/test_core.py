import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symtensor.core import (DEFAULT_TOL, FlatOperator, FlatTensor,
                            NonOrthogonalError, NotAProjectorError,
                            TolerancePolicy, image_basis, kron_power,
                            operator_trace, rational_snap)
from symtensor.spaces import SPACES

from conftest import haar_rotation


def rot3(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


class TestFlatTensor:
    def test_length_must_match(self):
        with pytest.raises(ValueError, match="length"):
            FlatTensor(3, 2, np.zeros(8))

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError, match="finite"):
            FlatTensor(2, 2, [1.0, np.nan, 0.0, 0.0])

    def test_immutable(self):
        t = FlatTensor(2, 2, [1.0, 0.0, 0.0, 1.0])
        with pytest.raises(ValueError):
            t.coeffs[0] = 5.0

    def test_from_array_roundtrip(self, rng):
        arr = rng.normal(size=(3, 3, 3, 3))
        t = FlatTensor.from_array(arr)
        assert t.k == 4 and np.array_equal(t.reshaped(), arr)


class TestKronPower:
    def test_identity_case(self):
        op = kron_power(np.eye(3), 4)
        assert op.matrix.shape == (81, 81)
        assert np.array_equal(op.matrix, np.eye(81))
        assert operator_trace(op) == 81.0

    def test_diagonal_signs_by_hand(self):
        # oracle: hand expansion of Q_ia Q_jb for diagonal Q
        q = np.diag([-1.0, -1.0, 1.0])
        op = kron_power(q, 2).matrix
        expected = np.zeros((9, 9))
        for i in range(3):
            for j in range(3):
                expected[3 * i + j, 3 * i + j] = q[i, i] * q[j, j]
        assert np.array_equal(op, expected)
        assert op[3 * 0 + 1, 3 * 0 + 1] == 1.0    # (1,2) slot: (-1)(-1)
        assert op[3 * 0 + 2, 3 * 0 + 2] == -1.0   # (1,3) slot: (-1)(+1)

    def test_preserves_elasticity_symmetries(self, rng):
        ela3 = SPACES["ela3"]
        t = ela3.projector.apply(FlatTensor(3, 4, rng.normal(size=81)))
        q = haar_rotation(rng, 3)
        moved = kron_power(q, 4).apply(t)
        arr = moved.reshaped()
        assert np.allclose(arr, arr.transpose(1, 0, 2, 3), atol=1e-12)
        assert np.allclose(arr, arr.transpose(0, 1, 3, 2), atol=1e-12)
        assert np.allclose(arr, arr.transpose(2, 3, 0, 1), atol=1e-12)

    def test_rejects_non_orthogonal(self):
        with pytest.raises(NonOrthogonalError) as err:
            kron_power(np.eye(3) * 1.001, 2)
        assert err.value.residual > 1e-12

    def test_rejects_unsupported_order(self):
        with pytest.raises(ValueError, match="order"):
            kron_power(np.eye(3), 3)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2**32 - 1), st.sampled_from([2, 4, 5]))
    def test_homomorphism_and_orthogonality(self, seed, k):
        rng = np.random.default_rng(seed)
        q1, q2 = haar_rotation(rng, 3), haar_rotation(rng, 3)
        lhs = kron_power(q1 @ q2, k).matrix
        rhs = kron_power(q1, k).matrix @ kron_power(q2, k).matrix
        assert np.max(np.abs(lhs - rhs)) < 1e-10
        kq = kron_power(q1, k).matrix
        assert np.max(np.abs(kq.T @ kq - np.eye(kq.shape[0]))) < 1e-10


class TestOperatorTrace:
    def test_identity_81(self):
        assert operator_trace(kron_power(np.eye(3), 4)) == 81.0

    def test_symmetrizer_traces(self):
        assert operator_trace(SPACES["ela3"].projector) == pytest.approx(21.0, abs=1e-9)
        assert operator_trace(SPACES["v2"].projector) == pytest.approx(171.0, abs=1e-9)


class TestImageBasis:
    def test_identity_full_rank(self):
        op = FlatOperator(2, 2, np.eye(4))
        basis = image_basis(op)
        assert len(basis) == 4

    def test_rejects_non_projector(self):
        op = FlatOperator(2, 2, np.eye(4) * 2.0)
        with pytest.raises(NotAProjectorError):
            image_basis(op)

    def test_orthonormal_output(self):
        pi = SPACES["ela2"].projector
        basis = image_basis(pi)
        assert len(basis) == 6
        mat = np.column_stack([b.coeffs for b in basis])
        assert np.allclose(mat.T @ mat, np.eye(6), atol=1e-12)

    @settings(max_examples=20, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_rank_stable_under_orthogonal_conjugation(self, seed):
        rng = np.random.default_rng(seed)
        pi = SPACES["sym2"].projector.matrix
        r = haar_rotation(rng, 4)
        conjugated = FlatOperator(2, 2, r @ pi @ r.T)
        assert len(image_basis(conjugated)) == len(image_basis(SPACES["sym2"].projector))


class TestRationalSnap:
    @pytest.mark.parametrize("value,text", [
        (0.4999999999, "1/2"),
        (0.7071067812, "√2/2"),
        (0.3333333333, "1/3"),
        (-0.25, "-1/4"),
        (0.0, "0"),
        (2.0, "2"),
        (math.sqrt(3) / 2, "√3/2"),
    ])
    def test_snaps(self, value, text):
        snapped = rational_snap(value)
        assert snapped.exact and snapped.text == text

    def test_unsnapped_flagged(self):
        snapped = rational_snap(0.123456789)
        assert not snapped.exact and "unsnapped" in snapped.text

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            rational_snap(1e7)

    @settings(max_examples=50, deadline=None)
    @given(st.integers(-500, 500), st.integers(1, 64))
    def test_recovers_fractions(self, p, q):
        snapped = rational_snap(p / q)
        assert snapped.exact
        assert abs(snapped.value - p / q) <= DEFAULT_TOL.equality_tol


class TestTolerancePolicy:
    def test_zero_tol_bounds(self):
        with pytest.raises(ValueError):
            TolerancePolicy(zero_tol=1e-5)
        with pytest.raises(ValueError):
            TolerancePolicy(zero_tol=0.0)
        TolerancePolicy(zero_tol=1e-6)  # boundary is allowed
