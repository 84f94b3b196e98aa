import json

import numpy as np
import pytest

from catgen.cli import main


def read_csv(path):
    lines = path.read_text().strip().splitlines()
    assert lines[0].startswith("# provenance:")
    header = lines[1].split(",")
    rows = [line.split(",") for line in lines[2:]]
    return header, rows


class TestConfigHandling:
    def test_unknown_key_rejected(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"n_min": 2, "bogus": 1}))
        assert main(["table1", "--config", str(cfg), "--out", str(tmp_path)]) == 2

    def test_bad_json_rejected(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text("{not json")
        assert main(["table1", "--config", str(cfg), "--out", str(tmp_path)]) == 2

    def test_bad_type_rejected(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"n_min": "two"}))
        assert main(["table1", "--config", str(cfg), "--out", str(tmp_path)]) == 2


class TestTable1Command:
    def test_restricted_run_verifies(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"n_min": 2, "n_max": 3}))
        code = main(["table1", "--config", str(cfg), "--out", str(tmp_path), "--verify"])
        assert code == 0
        header, rows = read_csv(tmp_path / "table1.csv")
        assert header == ["n", "parity", "alpha", "beta_max", "fidelity"]
        assert len(rows) == 4


class TestFidelityMapCommand:
    def test_surface_properties(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(
            json.dumps({"n": 4, "parity": "even", "alpha_points": 21, "beta_points": 11})
        )
        assert main(["fidelity-map", "--config", str(cfg), "--out", str(tmp_path)]) == 0
        header, rows = read_csv(tmp_path / "fidelity_map_n4_even.csv")
        assert header == ["alpha", "beta", "fidelity"]
        data = np.array([[float(v) for v in row] for row in rows])
        f = data[:, 2]
        assert np.all((0.0 <= f) & (f <= 1.0 + 1e-12))
        # alpha -> -alpha symmetry of the surface
        by_point = {(round(a, 9), round(b, 9)): v for a, b, v in data}
        for (a, b), v in by_point.items():
            assert v == pytest.approx(by_point[(round(-a, 9), b)], abs=1e-12)

    def test_bad_parity_is_input_error(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"parity": "sideways"}))
        assert main(["fidelity-map", "--config", str(cfg), "--out", str(tmp_path)]) == 2


class TestEntangledCommand:
    def test_single_column_verifies(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"parity": "even", "n": 3}))
        code = main(["entangled", "--config", str(cfg), "--out", str(tmp_path), "--verify"])
        assert code == 0
        _, summary = read_csv(tmp_path / "entangled_summary.csv")
        assert len(summary) == 1
        assert float(summary[0][6]) > 1 - 1e-10  # round-trip fidelity
        _, splitters = read_csv(tmp_path / "entangled_splitters.csv")
        assert len(splitters) == 3


class TestFockSchemeCommand:
    def test_table4_verifies(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"m": 3}))
        code = main(["fock-scheme", "--config", str(cfg), "--out", str(tmp_path), "--verify"])
        assert code == 0
        _, rows = read_csv(tmp_path / "fock_scheme.csv")
        assert len(rows) == 2
        for row in rows:
            assert float(row[6]) < 1e-8  # oracle fidelity defect
            assert float(row[7]) < 1e-8  # oracle probability defect


class TestWignerCommand:
    def test_even_state_verifies(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"parity": "even"}))
        code = main(["wigner", "--config", str(cfg), "--out", str(tmp_path), "--verify"])
        assert code == 0
        _, rows = read_csv(tmp_path / "wigner_summary.csv")
        assert len(rows) == 1
        parity, f_vec, f_wig, min_scq, _, min_scs, _ = rows[0]
        assert parity == "even"
        assert abs(float(f_vec) - float(f_wig)) < 1e-6
        assert float(min_scq) < 0 and float(min_scs) < 0
        header, grid_rows = read_csv(tmp_path / "wigner_scq_even.csv")
        assert header == ["x", "p", "w"]
        assert len(grid_rows) == 256 * 256


class TestDeterminism:
    def test_identical_config_gives_identical_bytes(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"n": 3, "parity": "odd", "alpha_points": 9, "beta_points": 7}))
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert main(["fidelity-map", "--config", str(cfg), "--out", str(out1)]) == 0
        assert main(["fidelity-map", "--config", str(cfg), "--out", str(out2)]) == 0
        name = "fidelity_map_n3_odd.csv"
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


class TestFitFlag:
    def test_fit_writes_results(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"m": 3, "restarts": 1}))
        code = main(
            ["fock-scheme", "--config", str(cfg), "--out", str(tmp_path), "--fit", "--verify"]
        )
        assert code == 0
        _, rows = read_csv(tmp_path / "fock_scheme_fit.csv")
        assert len(rows) == 2
        for row in rows:
            assert 0.9 < float(row[2]) <= 1.0
