#!/usr/bin/env python3
"""Desk-scale study: phase sweep, density aggregation, decoding benchmark.

Writes everything under the output directory:

    out/
      sweep/            pixel JSONs, pixels.csv, codes/*.json
      density.csv       per-n mean code density and minimum sat gamma
      decoding.csv      per-(code, p) failure reports for the best codes
      decoding_min.csv  per-(n, p) minima, the headline aggregation

Interrupting is safe; rerunning resumes from completed pixels.
"""

import argparse
import sys
from pathlib import Path

from stabsearch.constraints import EncodingParams
from stabsearch.erasure import failure_rate
from stabsearch.harness import (
    SATISFIABLE,
    SweepConfig,
    run_decoding_benchmark,
    run_density_study,
    run_phase_sweep,
    sweep_records,
    write_decoding_csv,
    write_decoding_min_csv,
    write_density_csv,
)
from stabsearch.rng import RngSpec, stable_hash64


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="desk_scale_out")
    ap.add_argument("--master-seed", type=int, default=20240808)
    ap.add_argument("--qubit-counts", default="20,30,40")
    ap.add_argument("--samples", type=int, default=10)
    ap.add_argument("--budget", type=float, default=60.0)
    ap.add_argument("--workers", type=int, default=2)
    ap.add_argument("--delta-q", type=int, default=3)
    ap.add_argument("--delta-s", type=int, default=0)
    ap.add_argument("--delta-s-max", type=int, default=None)
    ap.add_argument("--balance", action="store_true")
    ap.add_argument("--trials", type=int, default=10_000)
    ap.add_argument("--screen-trials", type=int, default=600)
    ap.add_argument("--top", type=int, default=3, help="codes per n in the final benchmark")
    ap.add_argument("--p-grid", default="0.30,0.35,0.40,0.45")
    args = ap.parse_args()

    out = Path(args.out)
    params = EncodingParams(
        min_qubit_degree=args.delta_q,
        min_stab_degree=args.delta_s,
        max_stab_degree=args.delta_s_max,
        balanced=args.balance,
    )
    cfg = SweepConfig(
        qubit_counts=tuple(int(tok) for tok in args.qubit_counts.split(",")),
        gamma_min=0.05,
        gamma_max=0.95,
        gamma_step=0.05,
        samples=args.samples,
        params=params,
        time_budget=args.budget,
        master_seed=args.master_seed,
        workers=args.workers,
        out_dir=str(out / "sweep"),
    )

    print(f"[1/3] phase sweep -> {cfg.out_dir}")
    pixels = run_phase_sweep(cfg)
    sat_pixels = {(p.n, p.gamma) for p in pixels if p.classification == SATISFIABLE}
    print(f"      {len(pixels)} pixels, {len(sat_pixels)} satisfiable")

    records = [
        r
        for r in sweep_records(cfg.out_dir)
        if (r.provenance["n"], r.provenance["gamma"]) in sat_pixels
    ]
    if not records:
        print("no codes in the satisfiable phase; nothing to aggregate", file=sys.stderr)
        return 1

    print(f"[2/3] density study over {len(records)} codes")
    write_density_csv(out / "density.csv", run_density_study(records))

    print("[3/3] decoding benchmark")
    p_grid = [float(tok) for tok in args.p_grid.split(",")]
    rng = RngSpec(args.master_seed)
    best: list = []
    for n in sorted({r.stats.n for r in records}):
        candidates = [r for r in records if r.stats.n == n and r.stats.rate >= 0.1]
        candidates.sort(
            key=lambda r: failure_rate(
                r.code, 0.35, args.screen_trials,
                RngSpec(args.master_seed, stable_hash64("screen", r.code_id)),
            ).failure_rate
        )
        best.extend(candidates[: args.top])
    rows, minima = run_decoding_benchmark(best, p_grid, args.trials, rng)
    write_decoding_csv(out / "decoding.csv", rows)
    write_decoding_min_csv(out / "decoding_min.csv", minima)
    for row in minima:
        print(f"      n={row['n']} p={row['p']}: min failure {row['min_failure_rate']:.4f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
