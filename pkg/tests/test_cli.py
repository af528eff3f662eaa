import json

import pytest

from stabsearch.cli import main
from stabsearch.css import shor_code
from stabsearch.graphs import SupportGraph


def run(argv):
    return main(argv)


class TestSampleEncodeSolve:
    def test_sample_encode_solve_chain(self, tmp_path, capsys):
        graph = tmp_path / "g.json"
        system = tmp_path / "s.json"
        out = tmp_path / "r.json"
        assert run(["sample", "--n", "8", "--m", "7", "--gamma", "0.5",
                    "--seed", "3", "--out", str(graph)]) == 0
        g = SupportGraph.from_json(graph.read_text())
        assert g.n == 8 and g.m == 7
        assert run(["encode", "--graph", str(graph), "--delta-q", "1",
                    "--out", str(system)]) == 0
        assert run(["solve", "--system", str(system), "--budget", "10",
                    "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["verdict"] in ("sat", "unsat")
        assert "assignment" in doc or doc["verdict"] != "sat"
        assert "verdict:" in capsys.readouterr().out

    def test_sample_invalid_gamma_is_validation_error(self, tmp_path):
        assert run(["sample", "--n", "4", "--m", "3", "--gamma", "1.5",
                    "--out", str(tmp_path / "g.json")]) == 4

    def test_missing_file_is_io_error(self, tmp_path):
        assert run(["encode", "--graph", str(tmp_path / "absent.json"),
                    "--out", str(tmp_path / "s.json")]) == 3

    def test_corrupt_system_is_validation_error(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{\"not\": \"a system\"}")
        assert run(["solve", "--system", str(bad)]) == 4

    def test_usage_error_exit_code(self):
        with pytest.raises(SystemExit) as exc:
            run(["sample", "--n", "4"])  # missing required flags
        assert exc.value.code == 2

    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit) as exc:
            run(["frobnicate"])
        assert exc.value.code == 2


class TestFindCode:
    def test_find_code_writes_record(self, tmp_path, capsys):
        out = tmp_path / "rec.json"
        assert run(["find-code", "--n", "10", "--m", "9", "--gamma", "0.8",
                    "--delta-q", "1", "--seed", "7", "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["stats"]["n"] == 10
        text = capsys.readouterr().out
        assert "found code" in text and "rate=" in text


class TestSweepAndDensity:
    def test_sweep_and_density(self, tmp_path, capsys):
        cfg = {
            "qubit_counts": [6],
            "gamma_min": 0.4,
            "gamma_max": 1.0,
            "gamma_step": 0.3,
            "samples": 2,
            "params": {"min_qubit_degree": 1},
            "time_budget": 5.0,
            "master_seed": 11,
            "workers": 1,
        }
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps(cfg))
        out_dir = tmp_path / "sweepdir"
        assert run(["sweep", "--config", str(cfg_path), "--out", str(out_dir)]) == 0
        assert (out_dir / "pixels.csv").exists()
        density_csv = tmp_path / "density.csv"
        code = run(["density", "--sweep", str(out_dir), "--out", str(density_csv)])
        pixels = (out_dir / "pixels.csv").read_text()
        if "satisfiable" in pixels.replace("unsatisfiable", ""):
            assert code == 0
            assert density_csv.exists()
        else:
            assert code == 4

    def test_gamma_zero_grid_is_all_unsat(self, tmp_path):
        cfg = {
            "qubit_counts": [5],
            "gamma_min": 0.0,
            "gamma_max": 0.0,
            "gamma_step": 0.1,
            "samples": 2,
            "params": {"min_qubit_degree": 1},
            "time_budget": 5.0,
            "master_seed": 1,
        }
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps(cfg))
        out_dir = tmp_path / "zs"
        assert run(["sweep", "--config", str(cfg_path), "--out", str(out_dir)]) == 0
        lines = (out_dir / "pixels.csv").read_text().splitlines()
        assert len(lines) == 3
        assert lines[2].endswith("unsatisfiable")
        assert ",2,0," in lines[2]  # unsat=2, unknown=0


class TestDecode:
    def test_decode_plain_code_document(self, tmp_path, capsys):
        code_path = tmp_path / "shor.json"
        code_path.write_text(shor_code().to_json())
        assert run(["decode", "--code", str(code_path), "--p", "0.5",
                    "--trials", "2000", "--seed", "5"]) == 0
        out = capsys.readouterr().out
        assert "failure_rate=" in out
        rate = float(out.split("failure_rate=")[1].split(" ")[0])
        assert 0.0 <= rate <= 1.0

    def test_decode_grid_and_csv(self, tmp_path):
        code_path = tmp_path / "shor.json"
        code_path.write_text(shor_code().to_json())
        out_csv = tmp_path / "dec.csv"
        assert run(["decode", "--code", str(code_path), "--grid", "0.1,0.5",
                    "--trials", "500", "--out", str(out_csv)]) == 0
        lines = out_csv.read_text().splitlines()
        assert len(lines) == 4  # format line + header + 2 rows

    def test_decode_rejects_garbage(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("[1, 2, 3]")
        assert run(["decode", "--code", str(bad)]) == 4


class TestExportCnf:
    def test_export_cnf(self, tmp_path, capsys):
        graph = tmp_path / "g.json"
        system = tmp_path / "s.json"
        cnf = tmp_path / "s.cnf"
        run(["sample", "--n", "5", "--m", "4", "--gamma", "0.7", "--seed", "2",
             "--out", str(graph)])
        run(["encode", "--graph", str(graph), "--delta-q", "1", "--out", str(system)])
        assert run(["export-cnf", "--system", str(system), "--out", str(cnf)]) == 0
        text = cnf.read_text()
        assert text.splitlines()[0].startswith("c")
        assert any(ln.startswith("p cnf ") for ln in text.splitlines())
