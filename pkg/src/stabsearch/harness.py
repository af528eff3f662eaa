"""Experiment orchestration: phase sweeps, density study, decoding benchmark.

A sweep walks a (qubit count, edge probability) grid, samples support
graphs, encodes, solves within a budget, and classifies each pixel from
the per-sample verdicts.  Every satisfiable sample is persisted as a
content-addressed CodeRecord.  Completed pixels are written to disk
immediately, so interrupted sweeps resume exactly where they stopped
and reruns reproduce byte-identical outputs.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from multiprocessing import Pool
from pathlib import Path

from .constraints import EncodingParams, encode
from .css import CssCode, CodeStats, check_commutation, extract_code
from .css import satisfies_degree_bounds, stats as code_stats
from .erasure import failure_rate
from .graphs import sample_support_graph
from .rng import RngSpec, stable_hash64
from .solver import SAT, SolverConfig, solve

PIXEL_FORMAT_VERSION = 1
RECORD_FORMAT_VERSION = 1
CSV_FORMAT_LINE = "# format_version: 1"

SATISFIABLE = "satisfiable"
UNSATISFIABLE = "unsatisfiable"
UNKNOWN_REGION = "unknown"


class RecordValidationError(ValueError):
    """A persisted code record fails re-validation."""


def classify_pixel(sat: int, unsat: int, unknown: int, solved_threshold: float = 0.9) -> str:
    """Pixel classification rule.

    Unknown when fewer than solved_threshold of the samples were
    decided; otherwise satisfiable iff strictly more sat than unsat.
    """
    samples = sat + unsat + unknown
    if samples == 0:
        raise ValueError("empty pixel")
    if (sat + unsat) / samples < solved_threshold:
        return UNKNOWN_REGION
    return SATISFIABLE if sat > unsat else UNSATISFIABLE


@dataclass(frozen=True)
class PixelResult:
    n: int
    m: int
    gamma: float
    sat: int
    unsat: int
    unknown: int
    classification: str

    @property
    def samples(self) -> int:
        return self.sat + self.unsat + self.unknown

    @property
    def sat_fraction(self) -> float:
        return self.sat / self.samples


@dataclass(frozen=True)
class SweepConfig:
    qubit_counts: tuple[int, ...]
    gamma_min: float
    gamma_max: float
    gamma_step: float
    samples: int = 10
    ratio: float = 0.9
    params: EncodingParams = field(default_factory=EncodingParams)
    time_budget: float = 60.0
    master_seed: int = 0
    workers: int = 1
    solved_threshold: float = 0.9
    out_dir: str = "sweep_out"

    def __post_init__(self):
        if not self.qubit_counts:
            raise ValueError("qubit_counts must be non-empty")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.gamma_step <= 0 or self.gamma_max < self.gamma_min:
            raise ValueError("invalid gamma grid")

    def gammas(self) -> tuple[float, ...]:
        count = int(math.floor((self.gamma_max - self.gamma_min) / self.gamma_step + 1e-9)) + 1
        return tuple(round(self.gamma_min + i * self.gamma_step, 9) for i in range(count))

    def m_for(self, n: int) -> int:
        return max(1, round(self.ratio * n))

    def to_dict(self) -> dict:
        return {
            "format_version": 1,
            "qubit_counts": list(self.qubit_counts),
            "gamma_min": self.gamma_min,
            "gamma_max": self.gamma_max,
            "gamma_step": self.gamma_step,
            "samples": self.samples,
            "ratio": self.ratio,
            "params": self.params.to_dict(),
            "time_budget": self.time_budget,
            "master_seed": self.master_seed,
            "workers": self.workers,
            "solved_threshold": self.solved_threshold,
        }

    @classmethod
    def from_dict(cls, doc: dict, out_dir: str = "sweep_out") -> "SweepConfig":
        return cls(
            qubit_counts=tuple(doc["qubit_counts"]),
            gamma_min=doc["gamma_min"],
            gamma_max=doc["gamma_max"],
            gamma_step=doc["gamma_step"],
            samples=doc.get("samples", 10),
            ratio=doc.get("ratio", 0.9),
            params=EncodingParams.from_dict(doc.get("params", {})),
            time_budget=doc.get("time_budget", 60.0),
            master_seed=doc.get("master_seed", 0),
            workers=doc.get("workers", 1),
            solved_threshold=doc.get("solved_threshold", 0.9),
            out_dir=out_dir,
        )


@dataclass(frozen=True)
class CodeRecord:
    """A discovered code with its statistics and full provenance."""

    code_id: str
    code: CssCode
    stats: CodeStats
    provenance: dict

    @classmethod
    def build(cls, code: CssCode, provenance: dict) -> "CodeRecord":
        return cls(
            code_id=code_content_id(code),
            code=code,
            stats=code_stats(code),
            provenance=provenance,
        )

    def to_json(self) -> str:
        doc = {
            "format_version": RECORD_FORMAT_VERSION,
            "code_id": self.code_id,
            "code": json.loads(self.code.to_json()),
            "stats": self.stats.to_dict(),
            "provenance": self.provenance,
        }
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "CodeRecord":
        doc = json.loads(text)
        code = CssCode.from_json(json.dumps(doc["code"]))
        sdoc = doc["stats"]
        stats_ = CodeStats(
            n=sdoc["n"],
            m_x=sdoc["m_x"],
            m_z=sdoc["m_z"],
            k=sdoc["k"],
            rate=sdoc["rate"],
            density=sdoc["density"],
            qubit_degree_hist={int(k): v for k, v in sdoc["qubit_degree_hist"].items()},
            stab_degree_hist={int(k): v for k, v in sdoc["stab_degree_hist"].items()},
            mean_stab_degree=sdoc["mean_stab_degree"],
        )
        return cls(doc["code_id"], code, stats_, doc["provenance"])

    def validate(self) -> None:
        """Re-verify commutation, stored stats, id and degree bounds."""
        if self.code_id != code_content_id(self.code):
            raise RecordValidationError("code_id does not match code content")
        if not check_commutation(self.code):
            raise RecordValidationError("stored code violates commutation")
        fresh = code_stats(self.code)
        if fresh != self.stats:
            raise RecordValidationError("stored stats do not match recomputed stats")
        params = EncodingParams.from_dict(self.provenance.get("params", {}))
        if not satisfies_degree_bounds(self.code, params):
            raise RecordValidationError("stored code violates its encoded degree bounds")


def code_content_id(code: CssCode) -> str:
    return hashlib.sha256(code.to_json().encode("utf-8")).hexdigest()[:16]


def find_code(
    n: int,
    m: int,
    gamma: float,
    params: EncodingParams,
    rng: RngSpec,
    solver_cfg: SolverConfig | None = None,
):
    """Sample one graph, encode, solve; return (verdict, record or None)."""
    solver_cfg = solver_cfg or SolverConfig()
    graph = sample_support_graph(n, m, gamma, rng)
    cs = encode(graph, params)
    result = solve(cs, solver_cfg)
    record = None
    if result.verdict == SAT:
        code = extract_code(graph, result.assignment)
        record = CodeRecord.build(
            code,
            provenance={
                "n": n,
                "m": m,
                "gamma": gamma,
                "master_seed": rng.master_seed,
                "stream_id": rng.stream_id,
                "params": params.to_dict(),
                "solver": result.stats.to_dict(include_wall_time=False),
                "verdict": result.verdict,
            },
        )
    return result, record


def _run_sample(task: tuple) -> dict:
    """One (pixel, sample) unit of sweep work; module-level for pickling."""
    n, m, gamma, sample_idx, master_seed, params_doc, time_budget = task
    params = EncodingParams.from_dict(params_doc)
    rng = RngSpec(master_seed, stable_hash64(n, gamma, sample_idx))
    solver_cfg = SolverConfig(
        time_budget=time_budget,
        seed=stable_hash64("solver", n, gamma, sample_idx, master_seed) & 0x7FFFFFFF,
    )
    result, record = find_code(n, m, gamma, params, rng, solver_cfg)
    return {
        "sample": sample_idx,
        "verdict": result.verdict,
        "solver": result.stats.to_dict(include_wall_time=False),
        "record": json.loads(record.to_json()) if record else None,
    }


def _pixel_path(out: Path, n: int, gamma_index: int) -> Path:
    return out / "pixels" / f"pixel_n{n}_g{gamma_index:03d}.json"


def _pixel_from_doc(doc: dict) -> PixelResult:
    return PixelResult(
        n=doc["n"],
        m=doc["m"],
        gamma=doc["gamma"],
        sat=doc["sat"],
        unsat=doc["unsat"],
        unknown=doc["unknown"],
        classification=doc["classification"],
    )


def run_phase_sweep(cfg: SweepConfig, task_limit: int | None = None) -> list[PixelResult]:
    """Run (or resume) a sweep; returns pixel results in grid order.

    task_limit caps the number of pixels computed in this call, which
    emulates an interruption; a later call resumes from the pixel files.
    The final CSV is only written once every pixel is complete.
    """
    out = Path(cfg.out_dir)
    (out / "pixels").mkdir(parents=True, exist_ok=True)
    (out / "codes").mkdir(parents=True, exist_ok=True)

    config_path = out / "config.json"
    snapshot = json.dumps(cfg.to_dict(), sort_keys=True)
    if config_path.exists():
        if config_path.read_text().strip() != snapshot:
            raise ValueError(f"output directory {out} holds a sweep with a different config")
    else:
        config_path.write_text(snapshot)

    gammas = cfg.gammas()
    pixels: list[PixelResult] = []
    computed = 0
    pool = Pool(cfg.workers) if cfg.workers > 1 else None
    try:
        for n in cfg.qubit_counts:
            m = cfg.m_for(n)
            for gi, gamma in enumerate(gammas):
                path = _pixel_path(out, n, gi)
                if path.exists():
                    pixels.append(_pixel_from_doc(json.loads(path.read_text())))
                    continue
                if task_limit is not None and computed >= task_limit:
                    return pixels
                tasks = [
                    (n, m, gamma, si, cfg.master_seed, cfg.params.to_dict(), cfg.time_budget)
                    for si in range(cfg.samples)
                ]
                if pool is not None:
                    outcomes = pool.map(_run_sample, tasks)
                else:
                    outcomes = [_run_sample(t) for t in tasks]
                outcomes.sort(key=lambda o: o["sample"])
                sat = sum(1 for o in outcomes if o["verdict"] == "sat")
                unsat = sum(1 for o in outcomes if o["verdict"] == "unsat")
                unknown = cfg.samples - sat - unsat
                classification = classify_pixel(sat, unsat, unknown, cfg.solved_threshold)
                record_ids = []
                for o in outcomes:
                    if o["record"] is not None:
                        rec_doc = o["record"]
                        record_ids.append(rec_doc["code_id"])
                        rec_path = out / "codes" / f"{rec_doc['code_id']}.json"
                        if not rec_path.exists():
                            rec_path.write_text(json.dumps(rec_doc, sort_keys=True))
                doc = {
                    "format_version": PIXEL_FORMAT_VERSION,
                    "n": n,
                    "m": m,
                    "gamma": gamma,
                    "sat": sat,
                    "unsat": unsat,
                    "unknown": unknown,
                    "classification": classification,
                    "verdicts": [o["verdict"] for o in outcomes],
                    "records": record_ids,
                }
                path.write_text(json.dumps(doc, sort_keys=True))
                pixels.append(_pixel_from_doc(doc))
                computed += 1
    finally:
        if pool is not None:
            pool.close()
            pool.join()

    write_pixel_csv(out / "pixels.csv", pixels)
    return pixels


def sweep_records(out_dir: str | Path, validate: bool = True) -> list[CodeRecord]:
    """Load every CodeRecord a sweep produced, sorted by id."""
    out = Path(out_dir)
    records = []
    for path in sorted((out / "codes").glob("*.json")):
        rec = CodeRecord.from_json(path.read_text())
        if validate:
            rec.validate()
        records.append(rec)
    return records


def sweep_pixels(out_dir: str | Path) -> list[PixelResult]:
    out = Path(out_dir)
    docs = [json.loads(p.read_text()) for p in sorted((out / "pixels").glob("pixel_*.json"))]
    docs.sort(key=lambda d: (d["n"], d["gamma"]))
    return [_pixel_from_doc(d) for d in docs]


def records_for_pixel(out_dir: str | Path, n: int, gamma: float) -> list[str]:
    out = Path(out_dir)
    for path in sorted((out / "pixels").glob(f"pixel_n{n}_*.json")):
        doc = json.loads(path.read_text())
        if doc["gamma"] == gamma:
            return doc["records"]
    return []


def write_pixel_csv(path: str | Path, pixels: list[PixelResult]) -> None:
    lines = [CSV_FORMAT_LINE, "n,m,gamma,sat,unsat,unknown,classification"]
    for px in sorted(pixels, key=lambda p: (p.n, p.gamma)):
        lines.append(
            f"{px.n},{px.m},{px.gamma!r},{px.sat},{px.unsat},{px.unknown},{px.classification}"
        )
    Path(path).write_text("\n".join(lines) + "\n")


def run_density_study(records: list[CodeRecord]) -> list[dict]:
    """Per qubit count: mean code density and the minimum gamma seen.

    Callers pass records from the satisfiable phase; the minimum gamma
    is then the smallest edge probability at which codes were found.
    """
    if not records:
        raise ValueError("no records to aggregate")
    by_n: dict[int, list[CodeRecord]] = {}
    for rec in records:
        by_n.setdefault(rec.stats.n, []).append(rec)
    rows = []
    for n in sorted(by_n):
        recs = by_n[n]
        rows.append(
            {
                "n": n,
                "mean_density": sum(r.stats.density for r in recs) / len(recs),
                "min_sat_gamma": min(r.provenance["gamma"] for r in recs),
                "num_codes": len(recs),
            }
        )
    return rows


def write_density_csv(path: str | Path, rows: list[dict]) -> None:
    lines = [CSV_FORMAT_LINE, "n,mean_density,min_sat_gamma,num_codes"]
    for r in rows:
        lines.append(f"{r['n']},{r['mean_density']!r},{r['min_sat_gamma']!r},{r['num_codes']}")
    Path(path).write_text("\n".join(lines) + "\n")


def run_decoding_benchmark(
    records: list[CodeRecord],
    p_grid: list[float],
    trials: int,
    rng: RngSpec,
    estimator: str = "exact",
) -> tuple[list[dict], list[dict]]:
    """Failure reports per (code, p), plus the per-(n, p) minima.

    Records must pass validation (commutation in particular) before
    being benchmarked.
    """
    rows = []
    for rec in sorted(records, key=lambda r: (r.stats.n, r.code_id)):
        rec.validate()
        for p in p_grid:
            rep = failure_rate(
                rec.code, p, trials, rng.substream("decode", rec.code_id, p), estimator
            )
            rows.append(
                {
                    "code_id": rec.code_id,
                    "n": rec.stats.n,
                    "k": rec.stats.k,
                    "p": p,
                    "trials": rep.trials,
                    "failures": rep.failures,
                    "failure_rate": rep.failure_rate,
                    "ci95": rep.ci95,
                }
            )
    minima = []
    for (n, p) in sorted({(r["n"], r["p"]) for r in rows}):
        best = min(
            (r for r in rows if r["n"] == n and r["p"] == p),
            key=lambda r: (r["failure_rate"], r["code_id"]),
        )
        minima.append(
            {"n": n, "p": p, "min_failure_rate": best["failure_rate"], "code_id": best["code_id"]}
        )
    return rows, minima


def write_decoding_csv(path: str | Path, rows: list[dict]) -> None:
    lines = [CSV_FORMAT_LINE, "code_id,n,k,p,trials,failures,failure_rate,ci95"]
    for r in rows:
        lines.append(
            f"{r['code_id']},{r['n']},{r['k']},{r['p']!r},{r['trials']},"
            f"{r['failures']!r},{r['failure_rate']!r},{r['ci95']!r}"
        )
    Path(path).write_text("\n".join(lines) + "\n")


def write_decoding_min_csv(path: str | Path, minima: list[dict]) -> None:
    lines = [CSV_FORMAT_LINE, "n,p,min_failure_rate,code_id"]
    for r in minima:
        lines.append(f"{r['n']},{r['p']!r},{r['min_failure_rate']!r},{r['code_id']}")
    Path(path).write_text("\n".join(lines) + "\n")
