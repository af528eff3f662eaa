import json

import pytest

from stabsearch.constraints import EncodingParams
from stabsearch.css import shor_code
from stabsearch.erasure import exact_failure_rate
from stabsearch.harness import (
    SATISFIABLE,
    UNKNOWN_REGION,
    UNSATISFIABLE,
    CodeRecord,
    RecordValidationError,
    SweepConfig,
    classify_pixel,
    code_content_id,
    find_code,
    run_decoding_benchmark,
    run_density_study,
    run_phase_sweep,
    sweep_pixels,
    sweep_records,
    write_decoding_csv,
    write_density_csv,
)
from stabsearch.rng import RngSpec
from stabsearch.solver import SAT, SolverConfig


def tiny_config(out_dir, workers=1, master_seed=77):
    return SweepConfig(
        qubit_counts=(6, 8),
        gamma_min=0.2,
        gamma_max=0.8,
        gamma_step=0.3,
        samples=3,
        params=EncodingParams(min_qubit_degree=1),
        time_budget=5.0,
        master_seed=master_seed,
        workers=workers,
        out_dir=str(out_dir),
    )


class TestClassification:
    def test_unknown_when_too_few_solved(self):
        assert classify_pixel(1, 0, 9) == UNKNOWN_REGION
        assert classify_pixel(4, 4, 2) == UNKNOWN_REGION  # 8/10 solved < 90%

    def test_majority_rule(self):
        assert classify_pixel(6, 3, 1) == SATISFIABLE
        assert classify_pixel(3, 6, 1) == UNSATISFIABLE
        assert classify_pixel(5, 5, 0) == UNSATISFIABLE  # tie is not a majority

    def test_threshold_configurable(self):
        assert classify_pixel(4, 4, 2, solved_threshold=0.8) == UNSATISFIABLE
        assert classify_pixel(5, 3, 2, solved_threshold=0.8) == SATISFIABLE

    def test_empty_pixel_rejected(self):
        with pytest.raises(ValueError):
            classify_pixel(0, 0, 0)

    def test_purity(self):
        for args in [(6, 3, 1), (0, 10, 0), (9, 0, 1)]:
            assert classify_pixel(*args) == classify_pixel(*args)


class TestFindCode:
    def test_find_code_roundtrip(self):
        result, record = find_code(
            10, 9, 0.8, EncodingParams(min_qubit_degree=1),
            RngSpec(5, 1), SolverConfig(time_budget=10, seed=2),
        )
        assert result.verdict == SAT
        assert record is not None
        record.validate()
        again = CodeRecord.from_json(record.to_json())
        assert again.code == record.code
        assert again.stats == record.stats
        again.validate()

    def test_unsat_returns_no_record(self):
        result, record = find_code(
            6, 5, 0.05, EncodingParams(min_qubit_degree=2),
            RngSpec(5, 1), SolverConfig(time_budget=5),
        )
        assert result.verdict == "unsat"
        assert record is None

    def test_validation_detects_tampering(self):
        _, record = find_code(
            10, 9, 0.8, EncodingParams(min_qubit_degree=1),
            RngSpec(5, 1), SolverConfig(time_budget=10),
        )
        doc = json.loads(record.to_json())
        doc["stats"]["k"] += 1
        with pytest.raises(RecordValidationError):
            CodeRecord.from_json(json.dumps(doc)).validate()
        doc2 = json.loads(record.to_json())
        doc2["code"]["hx"][0] = doc2["code"]["hx"][0][::-1]
        with pytest.raises(RecordValidationError):
            CodeRecord.from_json(json.dumps(doc2)).validate()


class TestSweep:
    def test_sweep_runs_and_persists(self, tmp_path):
        cfg = tiny_config(tmp_path / "s1")
        pixels = run_phase_sweep(cfg)
        assert len(pixels) == 2 * 3
        assert (tmp_path / "s1" / "pixels.csv").exists()
        assert (tmp_path / "s1" / "config.json").exists()
        for px in pixels:
            assert px.sat + px.unsat + px.unknown == cfg.samples
        # every persisted record re-validates
        for rec in sweep_records(tmp_path / "s1"):
            rec.validate()

    def test_rerun_is_byte_identical(self, tmp_path):
        cfg1 = tiny_config(tmp_path / "a")
        run_phase_sweep(cfg1)
        cfg2 = tiny_config(tmp_path / "b")
        run_phase_sweep(cfg2)
        csv_a = (tmp_path / "a" / "pixels.csv").read_bytes()
        csv_b = (tmp_path / "b" / "pixels.csv").read_bytes()
        assert csv_a == csv_b
        codes_a = sorted(p.name for p in (tmp_path / "a" / "codes").glob("*.json"))
        codes_b = sorted(p.name for p in (tmp_path / "b" / "codes").glob("*.json"))
        assert codes_a == codes_b
        for name in codes_a:
            assert (tmp_path / "a" / "codes" / name).read_bytes() == (
                tmp_path / "b" / "codes" / name
            ).read_bytes()

    def test_interrupt_and_resume_matches_uninterrupted(self, tmp_path):
        cfg_full = tiny_config(tmp_path / "full")
        run_phase_sweep(cfg_full)
        cfg_int = tiny_config(tmp_path / "resumed")
        partial = run_phase_sweep(cfg_int, task_limit=3)
        assert len(partial) == 3
        assert not (tmp_path / "resumed" / "pixels.csv").exists()
        run_phase_sweep(cfg_int)
        assert (tmp_path / "resumed" / "pixels.csv").read_bytes() == (
            tmp_path / "full" / "pixels.csv"
        ).read_bytes()

    def test_parallel_matches_serial(self, tmp_path):
        run_phase_sweep(tiny_config(tmp_path / "serial", workers=1))
        run_phase_sweep(tiny_config(tmp_path / "par", workers=2))
        assert (tmp_path / "serial" / "pixels.csv").read_bytes() == (
            tmp_path / "par" / "pixels.csv"
        ).read_bytes()

    def test_config_mismatch_detected(self, tmp_path):
        cfg = tiny_config(tmp_path / "x")
        run_phase_sweep(cfg, task_limit=1)
        other = tiny_config(tmp_path / "x", master_seed=78)
        with pytest.raises(ValueError):
            run_phase_sweep(other)

    def test_gamma_grid_construction(self):
        cfg = tiny_config("unused")
        assert cfg.gammas() == (0.2, 0.5, 0.8)
        cfg2 = SweepConfig(
            qubit_counts=(4,), gamma_min=0.05, gamma_max=0.95, gamma_step=0.05,
            out_dir="unused",
        )
        gs = cfg2.gammas()
        assert len(gs) == 19
        assert gs[0] == 0.05 and gs[-1] == 0.95

    def test_complete_graph_pixels_satisfiable(self, tmp_path):
        # at gamma = 1 the support graph is complete bipartite and
        # degree-constrained instances stay satisfiable
        cfg = SweepConfig(
            qubit_counts=(11, 12),
            gamma_min=1.0,
            gamma_max=1.0,
            gamma_step=0.1,
            samples=2,
            params=EncodingParams(min_qubit_degree=3),
            time_budget=30.0,
            master_seed=5,
            out_dir=str(tmp_path / "complete"),
        )
        pixels = run_phase_sweep(cfg)
        assert all(px.classification == SATISFIABLE for px in pixels)
        assert all(px.sat == 2 for px in pixels)

    def test_sweep_pixels_reload(self, tmp_path):
        cfg = tiny_config(tmp_path / "s2")
        pixels = run_phase_sweep(cfg)
        reloaded = sweep_pixels(tmp_path / "s2")
        assert reloaded == sorted(pixels, key=lambda p: (p.n, p.gamma))


class TestDensityStudy:
    def test_single_record(self):
        _, record = find_code(
            10, 9, 0.8, EncodingParams(min_qubit_degree=1),
            RngSpec(5, 1), SolverConfig(time_budget=10),
        )
        rows = run_density_study([record])
        assert len(rows) == 1
        assert rows[0]["mean_density"] == pytest.approx(record.stats.density)
        assert rows[0]["min_sat_gamma"] == 0.8

    def test_empty_records_rejected(self):
        with pytest.raises(ValueError):
            run_density_study([])

    def test_positive_density_under_degree_bound(self):
        # a min qubit degree forces active edges, so density cannot be zero
        _, record = find_code(
            8, 7, 0.9, EncodingParams(min_qubit_degree=1),
            RngSpec(6, 2), SolverConfig(time_budget=10),
        )
        assert record.stats.density > 0

    def test_csv_output(self, tmp_path):
        _, record = find_code(
            10, 9, 0.8, EncodingParams(min_qubit_degree=1),
            RngSpec(5, 1), SolverConfig(time_budget=10),
        )
        write_density_csv(tmp_path / "d.csv", run_density_study([record]))
        text = (tmp_path / "d.csv").read_text()
        assert text.startswith("# format_version: 1\n")
        assert "n,mean_density,min_sat_gamma,num_codes" in text


class TestDecodingBenchmark:
    def shor_record(self):
        return CodeRecord.build(shor_code(), provenance={"params": {}, "gamma": 0.5, "n": 9})

    def test_zero_p_grid_gives_zero_failures(self):
        rows, minima = run_decoding_benchmark([self.shor_record()], [0.0], 200, RngSpec(3))
        assert all(r["failure_rate"] == 0.0 for r in rows)
        assert minima[0]["min_failure_rate"] == 0.0

    def test_shor_grid_matches_exact_enumeration(self):
        code = shor_code()
        rows, _ = run_decoding_benchmark(
            [self.shor_record()], [0.1, 0.5, 0.9], 4000, RngSpec(0)
        )
        for row in rows:
            truth = exact_failure_rate(code, row["p"])
            assert abs(row["failure_rate"] - truth) <= row["ci95"] + 1e-12

    def test_csv_schema(self, tmp_path):
        rows, _ = run_decoding_benchmark([self.shor_record()], [0.3], 100, RngSpec(1))
        write_decoding_csv(tmp_path / "dec.csv", rows)
        lines = (tmp_path / "dec.csv").read_text().splitlines()
        assert lines[0] == "# format_version: 1"
        assert lines[1] == "code_id,n,k,p,trials,failures,failure_rate,ci95"
        assert len(lines) == 3

    def test_content_id_stable(self):
        assert code_content_id(shor_code()) == code_content_id(shor_code())
