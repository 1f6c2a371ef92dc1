import json

import numpy as np
import pytest

from symtensor.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestDim:
    def test_text_output(self, capsys):
        code, out, _ = run(capsys, "dim", "--space", "ela3", "--group", "cubic")
        assert code == 0 and out.strip() == "3"

    def test_json_output(self, capsys):
        code, out, _ = run(capsys, "dim", "--space", "v2bar", "--group", "so2-e3",
                           "--format", "json")
        assert code == 0
        assert json.loads(out) == {"space": "v2bar", "group": "so2-e3", "dim": 31}

    def test_high2_d2(self, capsys):
        code, out, _ = run(capsys, "dim", "--space", "high2", "--group", "d2")
        assert code == 0 and out.strip() == "20"

    def test_unknown_group_exits_2(self, capsys):
        code, _, err = run(capsys, "dim", "--space", "ela3", "--group", "icosahedral")
        assert code == 2 and "unknown group" in err

    def test_unknown_space_exits_2(self, capsys):
        code, _, err = run(capsys, "dim", "--space", "nope", "--group", "cubic")
        assert code == 2 and "unknown space" in err

    def test_ambient_mismatch_exits_2(self, capsys):
        code, _, err = run(capsys, "dim", "--space", "ela2", "--group", "cubic")
        assert code == 2

    def test_quadrature_failure_exits_3(self, capsys):
        code, _, err = run(capsys, "dim", "--space", "v2bar", "--group", "so3",
                           "--degree", "1")
        assert code == 3 and "quadrature" in err

    def test_axis_group(self, capsys):
        code, out, _ = run(capsys, "dim", "--space", "ela3", "--group", "so2-e3",
                           "--axis", "1,0,0")
        assert code == 0 and out.strip() == "5"


class TestStructure:
    def test_text(self, capsys):
        code, out, _ = run(capsys, "structure", "--space", "ela3", "--group", "so3")
        assert code == 0
        assert "C11 = C12 + 2 C44" in out

    def test_json_schema_roundtrip(self, capsys):
        code, out, _ = run(capsys, "structure", "--space", "major3", "--group", "o2-e3",
                           "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert set(payload) == {"space", "group", "dim", "shape", "entries", "constraints"}
        assert payload["dim"] == 8 and payload["shape"] == [9, 9]
        assert "C11 = C12 + C88 + C89" in payload["constraints"]
        for row in payload["entries"]:
            for entry in row:
                assert entry["kind"] in ("zero", "free", "dependent")
                if entry["kind"] == "dependent":
                    assert all({"coef", "value", "label"} <= set(term) for term in entry["combo"])

    def test_latex(self, capsys):
        code, out, _ = run(capsys, "structure", "--space", "ela2", "--group", "d4",
                           "--format", "latex")
        assert code == 0 and out.startswith("\\begin{pmatrix}")

    def test_unregistered_space_exits_2(self, capsys):
        code, _, err = run(capsys, "structure", "--space", "v1", "--group", "cubic")
        assert code == 2 and "slot map" in err


class TestProject:
    def test_worked_example(self, tmp_path, capsys):
        src = tmp_path / "in.json"
        src.write_text(json.dumps({"space": "sym2", "n": 2, "k": 2,
                                   "coeffs": [1.0, 2.0, 2.0, 5.0]}))
        dst = tmp_path / "out.json"
        code, _, err = run(capsys, "project", "--space", "sym2", "--group", "so2",
                           "--input", str(src), "--output", str(dst))
        assert code == 0
        payload = json.loads(dst.read_text())
        got = np.array(payload["coeffs"]).reshape(2, 2)
        assert np.allclose(got, 3.0 * np.eye(2), atol=1e-12)
        assert payload["invariance_residual"] < 1e-12
        assert "invariance residual" in err

    def test_invariant_input_passthrough(self, tmp_path, capsys):
        coeffs = np.eye(2).reshape(-1).tolist()
        src = tmp_path / "in.json"
        src.write_text(json.dumps({"n": 2, "k": 2, "coeffs": coeffs}))
        code, out, _ = run(capsys, "project", "--space", "sym2", "--group", "o2",
                           "--input", str(src))
        assert code == 0
        assert np.allclose(json.loads(out)["coeffs"], coeffs, atol=1e-12)

    def test_membership_failure_exits_5(self, tmp_path, capsys):
        src = tmp_path / "in.json"
        src.write_text(json.dumps({"n": 2, "k": 2, "coeffs": [1.0, 2.0, 3.0, 5.0]}))
        code, _, err = run(capsys, "project", "--space", "sym2", "--group", "so2",
                           "--input", str(src))
        assert code == 5 and "outside the space" in err

    def test_malformed_file_exits_5(self, tmp_path, capsys):
        src = tmp_path / "in.json"
        src.write_text("{not json")
        code, _, _ = run(capsys, "project", "--space", "sym2", "--group", "so2",
                         "--input", str(src))
        assert code == 5

    def test_space_header_mismatch_exits_5(self, tmp_path, capsys):
        src = tmp_path / "in.json"
        src.write_text(json.dumps({"space": "ela3", "n": 2, "k": 2,
                                   "coeffs": [1.0, 0.0, 0.0, 1.0]}))
        code, _, err = run(capsys, "project", "--space", "sym2", "--group", "so2",
                           "--input", str(src))
        assert code == 5 and "declares" in err


class TestModuli:
    def test_inline_values(self, capsys):
        code, out, _ = run(capsys, "moduli", "--values",
                           '{"C12": 1, "C44": 3, "C45": 1}')
        assert code == 0
        assert json.loads(out) == {"lambda": 1.0, "mu": 2.0, "mu_c": 1.0}

    def test_missing_values_exit_5(self, capsys):
        code, _, err = run(capsys, "moduli", "--values", '{"C12": 1}')
        assert code == 5


class TestMaps:
    def test_dump_json(self, capsys):
        code, out, _ = run(capsys, "maps", "--dump")
        assert code == 0
        tables = json.loads(out)
        assert "extended18" in tables and len(tables["extended18"]["slots"]) == 18
        assert tables["voigt6"]["slots"][3]["components"] == [[2, 3], [3, 2]]

    def test_summary(self, capsys):
        code, out, _ = run(capsys, "maps")
        assert code == 0 and "mandel6" in out


class TestVerifyPaper:
    def test_dims_subset_passes(self, capsys):
        code, out, _ = run(capsys, "verify-paper", "--rows", "dims")
        assert code == 0
        lines = [l for l in out.splitlines() if l.startswith("[")]
        assert len(lines) == 24
        assert all(l.startswith("[PASS]") for l in lines)

    def test_unknown_category_exits_2(self, capsys):
        code, _, err = run(capsys, "verify-paper", "--rows", "bogus")
        assert code == 2

    def test_fault_injection_fails_rows(self, capsys, monkeypatch):
        # corrupting a symmetrizer generator must surface as failed rows
        import symtensor.verification as verification
        from symtensor.spaces import SPACES, TensorSpace
        broken = TensorSpace("ela3", 3, 4, ((1, 0, 2, 3),))  # major symmetry dropped
        monkeypatch.setitem(SPACES, "ela3", broken)
        for cache in (verification._proj, verification._report,
                      verification._space_basis):
            cache.cache_clear()
        try:
            code, out, _ = run(capsys, "verify-paper", "--rows", "characters")
            assert code == 1
            assert any(l.startswith("[FAIL] characters ela3") for l in out.splitlines())
        finally:
            monkeypatch.undo()
            for cache in (verification._proj, verification._report,
                          verification._space_basis):
                cache.cache_clear()


class TestTolerance:
    def test_env_override(self, capsys, monkeypatch):
        monkeypatch.setenv("SYMTENSOR_TOL", "1e-8")
        code, out, _ = run(capsys, "structure", "--space", "ela3", "--group", "cubic")
        assert code == 0 and "C44" in out

    def test_bad_env_rejected(self, capsys, monkeypatch):
        monkeypatch.setenv("SYMTENSOR_TOL", "0.5")
        with pytest.raises(SystemExit):
            main(["structure", "--space", "ela3", "--group", "cubic"])
