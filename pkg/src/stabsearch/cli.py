"""Command line interface.

Exit codes: 0 success, 2 usage errors (argparse), 3 I/O failures,
4 validation failures (malformed or inconsistent inputs).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .constraints import ConstraintSystem, EncodingParams, constraint_census, encode
from .cnf import export_cnf
from .css import CssCode
from .graphs import SupportGraph, sample_support_graph
from .harness import (
    CodeRecord,
    RecordValidationError,
    SweepConfig,
    find_code,
    run_decoding_benchmark,
    run_density_study,
    run_phase_sweep,
    sweep_pixels,
    sweep_records,
    write_decoding_csv,
    write_decoding_min_csv,
    write_density_csv,
    SATISFIABLE,
)
from .rng import RngSpec
from .solver import SolverConfig, solve

EXIT_OK = 0
EXIT_IO = 3
EXIT_VALIDATION = 4


class _CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _CliError(f"cannot read {path}: {exc}", EXIT_IO)


def _write_text(path: str, text: str) -> None:
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise _CliError(f"cannot write {path}: {exc}", EXIT_IO)


def _params_from_args(args) -> EncodingParams:
    try:
        return EncodingParams(
            min_qubit_degree=args.delta_q,
            min_stab_degree=args.delta_s,
            max_stab_degree=args.delta_s_max,
            balanced=args.balance,
        )
    except ValueError as exc:
        raise _CliError(str(exc), EXIT_VALIDATION)


def _add_param_args(p: argparse.ArgumentParser):
    p.add_argument("--delta-q", type=int, default=0, help="min active X and Z edges per qubit")
    p.add_argument("--delta-s", type=int, default=0, help="min active edges per stabilizer")
    p.add_argument("--delta-s-max", type=int, default=None, help="max active edges per stabilizer")
    p.add_argument("--balance", action="store_true", help="force floor(m/2) X-type stabilizers")


def _cmd_sample(args) -> int:
    try:
        g = sample_support_graph(args.n, args.m, args.gamma, RngSpec(args.seed, args.stream))
    except ValueError as exc:
        raise _CliError(str(exc), EXIT_VALIDATION)
    _write_text(args.out, g.to_json() + "\n")
    print(f"sampled graph n={g.n} m={g.m} gamma={g.gamma} edges={len(g.edges)} -> {args.out}")
    return EXIT_OK


def _cmd_encode(args) -> int:
    params = _params_from_args(args)
    try:
        g = SupportGraph.from_json(_read_text(args.graph))
        cs = encode(g, params)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        raise _CliError(f"invalid graph document: {exc}", EXIT_VALIDATION)
    _write_text(args.out, cs.to_json() + "\n")
    census = constraint_census(cs)
    print(
        f"encoded {cs.num_vars} variables, {len(cs.constraints)} constraints "
        f"(or={census.or_count} xor={census.xor_count} linear={census.linear_count}) -> {args.out}"
    )
    return EXIT_OK


def _load_system(path: str) -> ConstraintSystem:
    try:
        return ConstraintSystem.from_json(_read_text(path))
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        raise _CliError(f"invalid system document: {exc}", EXIT_VALIDATION)


def _cmd_solve(args) -> int:
    cs = _load_system(args.system)
    result = solve(cs, SolverConfig(time_budget=args.budget, seed=args.solver_seed))
    doc = result.to_json_dict()
    if result.assignment is not None:
        doc["assignment"] = list(result.assignment.values)
    if args.out:
        _write_text(args.out, json.dumps(doc, sort_keys=True) + "\n")
    print(f"verdict: {result.verdict} ({result.stats.conflicts} conflicts, "
          f"{result.stats.propagations} propagations)")
    return EXIT_OK


def _cmd_find_code(args) -> int:
    params = _params_from_args(args)
    try:
        result, record = find_code(
            args.n,
            args.m,
            args.gamma,
            params,
            RngSpec(args.seed, args.stream),
            SolverConfig(time_budget=args.budget, seed=args.seed & 0x7FFFFFFF),
        )
    except ValueError as exc:
        raise _CliError(str(exc), EXIT_VALIDATION)
    if record is None:
        print(f"verdict: {result.verdict}, no code found")
        return EXIT_OK
    _write_text(args.out, record.to_json() + "\n")
    s = record.stats
    print(f"found code {record.code_id}: n={s.n} k={s.k} rate={s.rate:.4f} "
          f"density={s.density:.4f} mean_stab_degree={s.mean_stab_degree:.2f} -> {args.out}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    try:
        doc = json.loads(_read_text(args.config))
        cfg = SweepConfig.from_dict(doc, out_dir=args.out or doc.get("out_dir", "sweep_out"))
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        raise _CliError(f"invalid sweep config: {exc}", EXIT_VALIDATION)
    try:
        pixels = run_phase_sweep(cfg)
    except OSError as exc:
        raise _CliError(f"sweep I/O failure: {exc}", EXIT_IO)
    except ValueError as exc:
        raise _CliError(str(exc), EXIT_VALIDATION)
    sat = sum(1 for p in pixels if p.classification == "satisfiable")
    print(f"sweep complete: {len(pixels)} pixels ({sat} satisfiable) -> {cfg.out_dir}")
    return EXIT_OK


def _cmd_density(args) -> int:
    try:
        pixels = sweep_pixels(args.sweep)
        sat_pixels = {(p.n, p.gamma) for p in pixels if p.classification == SATISFIABLE}
        records = [
            r
            for r in sweep_records(args.sweep)
            if (r.provenance["n"], r.provenance["gamma"]) in sat_pixels
        ]
        rows = run_density_study(records)
    except RecordValidationError as exc:
        raise _CliError(str(exc), EXIT_VALIDATION)
    except (OSError, json.JSONDecodeError) as exc:
        raise _CliError(f"cannot load sweep: {exc}", EXIT_IO)
    except ValueError as exc:
        raise _CliError(str(exc), EXIT_VALIDATION)
    write_density_csv(args.out, rows)
    for r in rows:
        print(f"n={r['n']}: mean_density={r['mean_density']:.4f} "
              f"min_sat_gamma={r['min_sat_gamma']} codes={r['num_codes']}")
    return EXIT_OK


def _load_code_or_record(path: str) -> CodeRecord:
    text = _read_text(path)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise _CliError(f"invalid JSON in {path}: {exc}", EXIT_VALIDATION)
    try:
        if isinstance(doc, dict) and "code" in doc:
            record = CodeRecord.from_json(text)
            record.validate()
            return record
        code = CssCode.from_json(text)
        return CodeRecord.build(code, provenance={"params": {}, "source": path})
    except (RecordValidationError, ValueError, KeyError, TypeError) as exc:
        raise _CliError(f"invalid code document: {exc}", EXIT_VALIDATION)


def _cmd_decode(args) -> int:
    record = _load_code_or_record(args.code)
    if args.grid:
        try:
            p_grid = [float(tok) for tok in args.grid.split(",") if tok]
        except ValueError as exc:
            raise _CliError(f"invalid p grid: {exc}", EXIT_VALIDATION)
    else:
        p_grid = [args.p]
    try:
        rows, minima = run_decoding_benchmark(
            [record], p_grid, args.trials, RngSpec(args.seed), estimator=args.estimator
        )
    except (RecordValidationError, ValueError) as exc:
        raise _CliError(str(exc), EXIT_VALIDATION)
    if args.out:
        write_decoding_csv(args.out, rows)
    if args.min_out:
        write_decoding_min_csv(args.min_out, minima)
    for r in rows:
        print(f"p={r['p']}: failure_rate={r['failure_rate']:.6f} +/- {r['ci95']:.6f} "
              f"({r['trials']} trials)")
    return EXIT_OK


def _cmd_export_cnf(args) -> int:
    cs = _load_system(args.system)
    export = export_cnf(cs)
    _write_text(args.out, export.text)
    print(f"exported {export.num_vars} variables, {export.num_clauses} clauses -> {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stabsearch",
        description="Search for sparse CSS stabilizer codes on random bipartite support graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="sample a random support graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stream", type=int, default=0)
    p.add_argument("--out", default="graph.json")
    p.set_defaults(fn=_cmd_sample)

    p = sub.add_parser("encode", help="encode a graph into a constraint system")
    p.add_argument("--graph", required=True)
    _add_param_args(p)
    p.add_argument("--out", default="system.json")
    p.set_defaults(fn=_cmd_encode)

    p = sub.add_parser("solve", help="solve an encoded constraint system")
    p.add_argument("--system", required=True)
    p.add_argument("--budget", type=float, default=60.0)
    p.add_argument("--solver-seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("find-code", help="sample, encode, solve and extract a code")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--gamma", type=float, required=True)
    _add_param_args(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stream", type=int, default=0)
    p.add_argument("--budget", type=float, default=60.0)
    p.add_argument("--out", default="code_record.json")
    p.set_defaults(fn=_cmd_find_code)

    p = sub.add_parser("sweep", help="run a satisfiability phase sweep from a config file")
    p.add_argument("--config", required=True)
    p.add_argument("--out", default=None, help="output directory (overrides config)")
    p.set_defaults(fn=_cmd_sweep)

    p = sub.add_parser("density", help="aggregate code densities from a sweep directory")
    p.add_argument("--sweep", required=True)
    p.add_argument("--out", default="density.csv")
    p.set_defaults(fn=_cmd_density)

    p = sub.add_parser("decode", help="erasure failure rate for a stored code")
    p.add_argument("--code", required=True)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--grid", default=None, help="comma-separated erasure probabilities")
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--estimator", choices=["exact", "bernoulli"], default="exact")
    p.add_argument("--out", default=None)
    p.add_argument("--min-out", default=None)
    p.set_defaults(fn=_cmd_decode)

    p = sub.add_parser("export-cnf", help="export a system as DIMACS CNF")
    p.add_argument("--system", required=True)
    p.add_argument("--out", default="system.cnf")
    p.set_defaults(fn=_cmd_export_cnf)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
