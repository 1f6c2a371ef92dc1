import numpy as np
import pytest

from symtensor.core import FlatTensor, image_basis, kron_power
from symtensor.characters import fix_dimension
from symtensor.groups import (make_continuous_group, make_finite_group,
                              resolve_group)
from symtensor.projector import (MembershipError, NoVoigtMapError,
                                 averaged_projector, extract_isotropic_moduli,
                                 isotropic_nine_matrix, moduli_from_matrix,
                                 project, structure_report)
from symtensor.spaces import SPACES, symmetrize
from symtensor.voigt import MANDEL6, NINE_SLOT, induced_matrix


class TestAveragedProjector:
    def test_trivial_group_returns_symmetrizer(self):
        for name in ("sym2", "ela3"):
            sp = SPACES[name]
            a = averaged_projector(sp, resolve_group("trivial", sp.n))
            assert np.allclose(a.matrix, sp.projector.matrix, atol=1e-12)

    def test_sym2_so2_averages_to_spherical_part(self, rng):
        # oracle from the worked circle-average formulas: diagonal slots go
        # to the mean of the diagonal, the off-diagonal slot vanishes
        sp = SPACES["sym2"]
        a = averaged_projector(sp, make_continuous_group("SO2_2D"))
        x = rng.normal(size=(2, 2))
        x = (x + x.T) / 2.0
        out = a.apply(FlatTensor.from_array(x)).reshaped()
        mean = (x[0, 0] + x[1, 1]) / 2.0
        assert np.allclose(out, mean * np.eye(2), atol=1e-12)

    def test_sym2_diagonal_sign_group_by_hand(self, rng):
        # oracle: averaging over the four sign matrices diag(+-1, +-1)
        # kills the off-diagonal slot and keeps the diagonal
        signs = [np.diag(s) for s in ((1.0, 1.0), (-1.0, -1.0), (1.0, -1.0), (-1.0, 1.0))]
        x = rng.normal(size=(2, 2))
        x = (x + x.T) / 2.0
        expected = sum(q @ x @ q.T for q in signs) / 4.0
        sp = SPACES["sym2"]
        group = resolve_group("d2", 2)  # contains exactly those four matrices
        got = averaged_projector(sp, group).apply(FlatTensor.from_array(x)).reshaped()
        assert np.allclose(got, expected, atol=1e-12)
        assert abs(got[0, 1]) < 1e-15

    @pytest.mark.parametrize("space_name,group_name", [
        ("ela3", "cubic"), ("ela3", "so3"), ("major3", "o2-e3"),
        ("v2bar", "cubic"), ("high2", "d4"), ("ela2", "d4"),
    ])
    def test_idempotent_symmetric_rank(self, space_name, group_name):
        sp = SPACES[space_name]
        g = resolve_group(group_name, sp.n)
        a = averaged_projector(sp, g).matrix
        assert np.max(np.abs(a @ a - a)) < 1e-9
        assert np.max(np.abs(a - a.T)) < 1e-9
        rank = int(np.sum(np.linalg.eigvalsh((a + a.T) / 2.0) > 0.5))
        assert rank == fix_dimension(sp, g)

    def test_equivariance(self, rng):
        sp = SPACES["ela3"]
        g = make_finite_group("cubic_O")
        a = averaged_projector(sp, g).matrix
        for e in g.generators:
            kq = kron_power(e.matrix, 4).matrix
            assert np.max(np.abs(kq @ a - a)) < 1e-9
            assert np.max(np.abs(a @ kq - a)) < 1e-9


class TestProject:
    def test_invariant_input_unchanged(self, rng):
        sp = SPACES["ela3"]
        g = make_finite_group("cubic_O")
        t = symmetrize(sp, rng.normal(size=81))
        inv = averaged_projector(sp, g).apply(t)
        again = project(sp, g, inv)
        assert np.max(np.abs(again.coeffs - inv.coeffs)) < 1e-12

    def test_worked_circle_example(self):
        t = FlatTensor.from_array(np.array([[1.0, 2.0], [2.0, 5.0]]))
        out = project(SPACES["sym2"], make_continuous_group("SO2_2D"), t)
        assert np.allclose(out.reshaped(), 3.0 * np.eye(2), atol=1e-12)

    def test_output_invariant_under_generators(self, rng):
        sp = SPACES["ela3"]
        g = make_finite_group("cubic_O")
        out = project(sp, g, symmetrize(sp, rng.normal(size=81)))
        for e in g.generators:
            moved = kron_power(e.matrix, 4).matrix @ out.coeffs
            assert np.max(np.abs(moved - out.coeffs)) < 1e-10

    def test_rejects_outside_space(self):
        arr = np.zeros((3, 3, 3, 3))
        arr[0, 1, 0, 0] = 1.0
        with pytest.raises(MembershipError):
            project(SPACES["ela3"], make_finite_group("cubic_O"), FlatTensor.from_array(arr))

    def test_positive_definiteness_preserved(self, rng):
        # spherical + small symmetric perturbation stays positive definite
        # after averaging; checked through the isometric slot matrix
        sp = SPACES["ela3"]
        g = make_continuous_group("SO2_e3")
        base = image_basis(sp.projector)
        ident = np.einsum("ik,jl->ijkl", np.eye(3), np.eye(3))
        ident = (ident + np.einsum("il,jk->ijkl", np.eye(3), np.eye(3))) / 2.0
        t = symmetrize(sp, ident.reshape(-1) + 0.05 * rng.normal(size=81))
        out = project(sp, g, t)
        eigs = np.linalg.eigvalsh(induced_matrix(MANDEL6, MANDEL6, out))
        assert eigs.min() > 0.0


class TestStructureReport:
    def test_orthotropic_matches_block_pattern(self):
        rep = structure_report(SPACES["ela3"], make_finite_group("Dn_3D", 2))
        assert rep.dim == 9
        zeros = {(r, c) for r in range(6) for c in range(6)
                 if rep.entry(r, c).kind == "zero"}
        expected_zeros = {(r, c) for r in range(6) for c in range(6)
                          if (r < 3 <= c) or (c < 3 <= r) or (r >= 3 and c >= 3 and r != c)}
        assert zeros == expected_zeros
        assert len(rep.free_labels) == 9

    def test_isotropic_major3_constraint(self):
        rep = structure_report(SPACES["major3"], make_continuous_group("SO3"))
        assert rep.dim == 3
        assert "C11 = C12 + C44 + C45" in rep.constraints

    def test_v2bar_cubic_block_diagonal(self):
        rep = structure_report(SPACES["v2bar"], make_finite_group("cubic_O"))
        assert rep.dim == 11
        assert len(rep.free_labels) == 11
        for r in range(18):
            for c in range(18):
                same_block = (r // 5 == c // 5) if max(r, c) < 15 else (r >= 15 and c >= 15)
                if not same_block:
                    assert rep.entry(r, c).kind == "zero"

    def test_dim_zero_is_all_zero_report(self, monkeypatch):
        # an odd-order planar space dies under -I; the report degenerates
        # to all zeros instead of erroring
        from symtensor.spaces import TensorSpace
        from symtensor.voigt import OCTET8, STRUCTURE_MAPS, Slot, VoigtMap
        import itertools
        odd = TensorSpace("odd2", 2, 5, ())
        quad4 = VoigtMap("quad4", 2, 2, tuple(
            Slot((idx,), (1.0,), (1.0,))
            for idx in itertools.product(range(2), repeat=2)
        ))
        monkeypatch.setitem(STRUCTURE_MAPS, "odd2", (OCTET8, quad4))
        rep = structure_report(odd, resolve_group("z2", 2))
        assert rep.dim == 0
        assert all(e.kind == "zero" for row in rep.entries for e in row)
        assert rep.free_labels == ()

    def test_unregistered_space_rejected(self):
        with pytest.raises(NoVoigtMapError):
            structure_report(SPACES["v1"], make_finite_group("cubic_O"))

    def test_json_schema(self):
        rep = structure_report(SPACES["ela2"], resolve_group("d4", 2))
        payload = rep.to_json()
        assert set(payload) == {"space", "group", "dim", "shape", "entries", "constraints"}
        assert payload["dim"] == 3
        kinds = {e["kind"] for row in payload["entries"] for e in row}
        assert kinds <= {"zero", "free", "dependent"}

    def test_latex_has_sym_shorthand(self):
        rep = structure_report(SPACES["ela3"], make_finite_group("cubic_O"))
        tex = rep.to_latex()
        assert tex.startswith("\\begin{pmatrix}")
        assert "\\text{sym}" in tex


class TestIsotropicModuli:
    def test_worked_example(self):
        rep = structure_report(SPACES["major3"], make_continuous_group("SO3"))
        assert extract_isotropic_moduli(rep, {"C12": 1, "C44": 3, "C45": 1}) == (1, 2, 1)

    def test_symmetric_coupling_only(self):
        rep = structure_report(SPACES["major3"], make_continuous_group("SO3"))
        _, _, mu_c = extract_isotropic_moduli(rep, {"C12": 0.3, "C44": 1.7, "C45": 1.7})
        assert mu_c == 0.0

    def test_roundtrip_random(self, rng):
        rep = structure_report(SPACES["major3"], make_continuous_group("SO3"))
        for _ in range(5):
            lam, mu, mu_c = rng.normal(size=3)
            m = isotropic_nine_matrix(lam, mu, mu_c)
            got = moduli_from_matrix(m)
            assert np.allclose(got, (lam, mu, mu_c), atol=1e-12)
            values = {"C12": m[0, 1], "C44": m[3, 3], "C45": m[3, 4]}
            assert np.allclose(extract_isotropic_moduli(rep, values), (lam, mu, mu_c), atol=1e-12)

    def test_c11_supplies_missing_value(self):
        rep = structure_report(SPACES["major3"], make_continuous_group("SO3"))
        lam, mu, mu_c = extract_isotropic_moduli(rep, {"C12": 1.0, "C44": 3.0, "C11": 5.0})
        assert (lam, mu, mu_c) == (1.0, 2.0, 1.0)

    def test_wrong_report_kind_rejected(self):
        rep = structure_report(SPACES["ela3"], make_continuous_group("SO3"))
        with pytest.raises(ValueError, match="45-constant"):
            extract_isotropic_moduli(rep, {"C12": 1, "C44": 1, "C45": 1})

    def test_projected_tensor_matches_modulus_form(self, rng):
        sp = SPACES["major3"]
        g = make_continuous_group("SO3")
        t = symmetrize(sp, rng.normal(size=81))
        inv = averaged_projector(sp, g).apply(t)
        m = induced_matrix(NINE_SLOT, NINE_SLOT, inv)
        lam, mu, mu_c = moduli_from_matrix(m)
        assert np.max(np.abs(m - isotropic_nine_matrix(lam, mu, mu_c))) < 1e-9


class TestImageBasisOfAverage:
    def test_sym2_so2_basis_is_spherical(self):
        a = averaged_projector(SPACES["sym2"], make_continuous_group("SO2_2D"))
        basis = image_basis(a)
        assert len(basis) == 1
        mat = basis[0].reshaped()
        assert abs(mat[0, 0] - mat[1, 1]) < 1e-12 and abs(mat[0, 1]) < 1e-12

    def test_ela3_cubic_three_vectors(self):
        a = averaged_projector(SPACES["ela3"], make_finite_group("cubic_O"))
        assert len(image_basis(a)) == 3
