import numpy as np
import pytest

from symtensor.characters import (QuadratureNotConvergedError,
                                  character_closed_form, character_direct,
                                  fix_dimension, trace_power_reduce)
from symtensor.groups import (GroupElement, make_continuous_group,
                              make_finite_group, resolve_group, rotation_z)
from symtensor.spaces import SPACES, TensorSpace

from conftest import haar_rotation


class TestTracePowerReduce:
    def test_3d_identity(self):
        assert trace_power_reduce(3, 2, 3.0) == pytest.approx(3.0)
        assert trace_power_reduce(3, 3, 3.0) == pytest.approx(3.0)
        assert trace_power_reduce(3, 4, 3.0) == pytest.approx(3.0)

    def test_2d_identity_fourth_power(self):
        assert trace_power_reduce(2, 4, 2.0, det_sign=1) == pytest.approx(2.0)

    def test_3d_half_turn(self):
        # oracle: Q = rot(e3, pi) has Q^4 = I, so tr Q^4 = 3 at t = -1
        q = rotation_z(np.pi)
        t = float(np.trace(q))
        assert t == pytest.approx(-1.0)
        assert trace_power_reduce(3, 4, t) == pytest.approx(float(np.trace(np.linalg.matrix_power(q, 4))))
        assert trace_power_reduce(3, 4, -1.0) == pytest.approx(3.0)

    def test_matches_matrix_powers(self, rng):
        for _ in range(20):
            q = haar_rotation(rng, 3)
            t = float(np.trace(q))
            for m in (2, 3, 4):
                direct = float(np.trace(np.linalg.matrix_power(q, m)))
                assert trace_power_reduce(3, m, t) == pytest.approx(direct, abs=1e-10)
        for _ in range(20):
            q = haar_rotation(rng, 2)
            for refl in (False, True):
                mat = q @ np.diag([1.0, -1.0]) if refl else q
                sign = -1 if refl else 1
                t = float(np.trace(mat))
                for m in (2, 3, 4):
                    direct = float(np.trace(np.linalg.matrix_power(mat, m)))
                    assert trace_power_reduce(2, m, t, det_sign=sign) == pytest.approx(direct, abs=1e-10)

    def test_rejections(self):
        with pytest.raises(ValueError):
            trace_power_reduce(3, 5, 1.0)
        with pytest.raises(ValueError):
            trace_power_reduce(3, 2, 1.0, det_sign=-1)


class TestCharacters:
    def test_identity_values(self):
        for name, sp in SPACES.items():
            eye = GroupElement(np.eye(sp.n))
            assert character_direct(sp, eye) == pytest.approx(sp.dim, abs=1e-9)
            assert character_closed_form(sp, eye) == pytest.approx(sp.dim, abs=1e-12)

    def test_major3_identity_is_45(self):
        eye = GroupElement(np.eye(3))
        assert character_direct(SPACES["major3"], eye) == pytest.approx(45.0)

    def test_ela3_half_turn(self):
        # closed form at t = -1 gives 5; cross-checked by the 81x81 contraction
        e = GroupElement(rotation_z(np.pi))
        assert character_closed_form(SPACES["ela3"], e) == pytest.approx(5.0, abs=1e-12)
        assert character_direct(SPACES["ela3"], e) == pytest.approx(5.0, abs=1e-10)

    def test_high2_reflection_branch(self):
        refl = GroupElement(np.diag([-1.0, 1.0]))
        assert character_closed_form(SPACES["high2"], refl) == pytest.approx(4.0)
        assert character_direct(SPACES["high2"], refl) == pytest.approx(4.0, abs=1e-12)

    def test_direct_matches_closed_on_random_elements(self, rng):
        for name, sp in SPACES.items():
            for i in range(40):
                q = haar_rotation(rng, sp.n)
                if sp.n == 2 and i % 2:
                    q = q @ np.diag([1.0, -1.0])
                e = GroupElement(q)
                assert abs(character_direct(sp, e) - character_closed_form(sp, e)) < 1e-9

    def test_fallback_without_closed_form(self, rng):
        custom = TensorSpace("pairline", 2, 2, ())
        e = GroupElement(haar_rotation(rng, 2))
        assert character_closed_form(custom, e) == pytest.approx(character_direct(custom, e))

    def test_class_function(self, rng):
        sp = SPACES["ela3"]
        for _ in range(10):
            q, r = haar_rotation(rng, 3), haar_rotation(rng, 3)
            a = character_direct(sp, GroupElement(q))
            b = character_direct(sp, GroupElement(r @ q @ r.T))
            assert abs(a - b) < 1e-9


class TestFixDimension:
    def test_orthotropic_nine(self):
        assert fix_dimension(SPACES["ela3"], make_finite_group("Dn_3D", 2)) == 9

    def test_transversal_pair(self):
        assert fix_dimension(SPACES["major3"], make_continuous_group("SO2_e3")) == 11
        assert fix_dimension(SPACES["major3"], make_continuous_group("O2_e3")) == 8

    def test_cubic_gradient_spaces(self):
        cubic = make_finite_group("cubic_O")
        assert fix_dimension(SPACES["v1"], cubic) == 3
        assert fix_dimension(SPACES["v2"], cubic) == 11

    def test_planar_values(self):
        assert fix_dimension(SPACES["high2"], resolve_group("d4", 2)) == 10
        assert fix_dimension(SPACES["high2"], resolve_group("d2", 2)) == 20
        assert fix_dimension(SPACES["high2"], resolve_group("z2", 2)) == 36
        assert fix_dimension(SPACES["sym2"], resolve_group("o2", 2)) == 1

    def test_trivial_group_gives_space_dim(self):
        for name in ("sym2", "ela3", "v2bar"):
            sp = SPACES[name]
            assert fix_dimension(sp, resolve_group("trivial", sp.n)) == sp.dim

    def test_subgroup_monotonicity_chain(self):
        sp = SPACES["ela2"]
        dims = [fix_dimension(sp, resolve_group(g, 2))
                for g in ("trivial", "z2", "d2", "d4")]
        assert dims == sorted(dims, reverse=True)

    def test_ambient_mismatch(self):
        with pytest.raises(ValueError):
            fix_dimension(SPACES["ela2"], make_finite_group("cubic_O"))

    def test_non_convergence_detected(self):
        # an SO(3) rule far too coarse for the degree-6 character leaves a
        # non-integer average (coarse circle grids alias to exact subgroup
        # averages instead, so only the polar direction can trip this)
        sp = SPACES["v2bar"]
        with pytest.raises(QuadratureNotConvergedError):
            fix_dimension(sp, make_continuous_group("SO3"), degree=1)
