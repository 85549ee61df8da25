"""Command-line interface.

Subcommands: ingest, fit, sample, stats, sweep, verify, cell-verify.
Exit codes: 0 on success, 1 on operational failure, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .bounds import check_cc_tightness, check_kcycle_bound, check_triangle_bound
from .cell import vandermonde_embedding, verify_embedding
from .graphs import (
    degrees,
    largest_connected_component,
    load_edge_list,
    serialize_edge_list,
)
from .modelzoo import ModelSpec, build_model
from .oddsproduct import fit_odds_product
from .probmatrix import load_probmatrix, sample, save_probmatrix
from .rng import derive_seed
from .stats import STAT_COLUMNS, compare, triangle_counts
from .svgplot import render_sweep_svg
from .sweep import (
    ExperimentConfig,
    parse_config,
    reference_record,
    run_sweep,
    sweep_csv_header,
)
from .synth import random_bounded_degree_graph, random_probmatrix

BOUND_CSV_HEADER = "theorem,mode,lhs,rhs,ratio,holds,std_err"
CELL_CSV_HEADER = "n,max_degree,rank_bound,numerical_rank,max_error"


def _load_preprocessed(path):
    """Load an edge list and reduce it to its largest connected component."""
    g, load_map = load_edge_list(path)
    lcc, lcc_map = largest_connected_component(g)
    return lcc, load_map.compose(lcc_map)


def _write_or_print(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


def cmd_ingest(args) -> int:
    g, id_map = _load_preprocessed(args.input)
    _, total = triangle_counts(g)
    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = Path(args.input).stem
    (out_dir / f"{stem}_normalized.edges").write_text(
        serialize_edge_list(g), encoding="utf-8"
    )
    map_lines = ["dense_index,original_id"]
    map_lines += [f"{i},{orig}" for i, orig in enumerate(id_map.original_ids)]
    (out_dir / f"{stem}_idmap.csv").write_text(
        "\n".join(map_lines) + "\n", encoding="utf-8"
    )
    def plural(k: int, word: str) -> str:
        return f"{k} {word}" + ("" if k == 1 else "s")

    print(
        f"{plural(g.n, 'node')}, {plural(g.m, 'edge')}, {plural(total, 'triangle')}"
    )
    return 0


def cmd_fit(args) -> int:
    g, _ = load_edge_list(args.input)
    logits, p, report = fit_odds_product(
        degrees(g), eps=args.eps, max_iter=args.max_iter, damped=not args.no_damping
    )
    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = Path(args.input).stem
    save_probmatrix(p, out_dir / f"{stem}.pmat")
    trace = ["iteration,residual"]
    trace += [f"{i},{r!r}" for i, r in enumerate(report.residual_history)]
    (out_dir / f"{stem}_fit.csv").write_text("\n".join(trace) + "\n", encoding="utf-8")
    print(
        f"converged in {report.iterations} iterations, "
        f"max degree error {report.final_max_abs_error:.3e}"
    )
    return 0


def cmd_sample(args) -> int:
    p = load_probmatrix(args.input)
    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = Path(args.input).stem
    for t in range(args.samples):
        g = sample(p, derive_seed(args.seed, "cli-sample", t))
        path = out_dir / f"{stem}_sample{t}.edges"
        path.write_text(serialize_edge_list(g), encoding="utf-8")
        print(f"wrote {path} ({g.m} edges)")
    return 0


def cmd_stats(args) -> int:
    ref, _ = load_edge_list(args.reference)
    gen, _ = load_edge_list(args.sample)
    record = compare(ref, gen)
    text = ",".join(STAT_COLUMNS) + "\n" + record.to_csv_row() + "\n"
    _write_or_print(text, args.output)
    return 0


def _specs_from_flags(args) -> tuple[ModelSpec, ...]:
    knob_flag = {"linear": "omega", "ccop": "omega", "hdop": "h", "tsvd": "rank"}[
        args.model
    ]
    raw = getattr(args, knob_flag)
    if raw is None:
        raise ValueError(f"--model {args.model} needs --{knob_flag}")
    knobs = [float(tok) for tok in str(raw).replace(",", " ").split()]
    return tuple(ModelSpec(args.model, k) for k in knobs)


def cmd_sweep(args) -> int:
    if args.model:
        config = ExperimentConfig(input_path="", specs=_specs_from_flags(args))
    elif args.config:
        config = parse_config(Path(args.config).read_text(encoding="utf-8"))
    else:
        # default grid: the two convex-combination models over a coarse omega grid
        omegas = (0.0, 0.25, 0.5, 0.75, 1.0)
        config = ExperimentConfig(
            input_path="",
            specs=tuple(
                ModelSpec(kind, w) for kind in ("linear", "ccop") for w in omegas
            ),
        )
    updates = {}
    if args.input:
        updates["input_path"] = args.input
    if args.samples is not None:
        updates["samples"] = args.samples
    if args.seed is not None:
        updates["seed"] = args.seed
    if args.output_dir is not None:
        updates["output_dir"] = args.output_dir
    if args.plot:
        updates["plot"] = True
    if args.workers is not None:
        updates["workers"] = args.workers
    if updates:
        from dataclasses import replace

        config = replace(config, **updates)
    if not config.input_path:
        raise ValueError("no input edge list given (flag --input or config key)")

    reference, _ = _load_preprocessed(config.input_path)
    rows = run_sweep(
        reference, config.specs, config.samples, config.seed, config.workers
    )
    ok = [r for r in rows if r.status == "ok"]
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "sweep.csv"
    lines = [sweep_csv_header()] + [r.csv_row() for r in rows]
    csv_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {csv_path} ({len(ok)}/{len(rows)} points ok)")
    if config.plot:
        svg_path = out_dir / "sweep.svg"
        svg_path.write_text(
            render_sweep_svg(rows, reference_record(reference)), encoding="utf-8"
        )
        print(f"wrote {svg_path}")
    if not ok:
        print("all grid points failed", file=sys.stderr)
        return 1
    return 0


def cmd_verify(args) -> int:
    lines = [BOUND_CSV_HEADER]
    held = 0
    total = 0
    if args.theorem == "tri":
        for t in range(args.trials):
            n = 2 + derive_seed(args.seed, "verify-n", t) % max(1, args.n - 1)
            scale = 1.0 if t % 2 == 0 else 0.1
            p = random_probmatrix(n, derive_seed(args.seed, "verify-P", t), scale)
            report = check_triangle_bound(p)
            lines.append(report.csv_row())
            held += report.holds
            total += 1
    elif args.theorem == "kcycle":
        for t in range(args.trials):
            n = 4 + derive_seed(args.seed, "verify-n", t) % max(1, args.n - 3)
            scale = 1.0 if t % 2 == 0 else 0.1
            p = random_probmatrix(n, derive_seed(args.seed, "verify-P", t), scale)
            report = check_kcycle_bound(p, args.k)
            lines.append(report.csv_row())
            held += report.holds
            total += 1
    else:  # cc
        report = check_cc_tightness(
            args.n, args.gamma, samples=args.trials, seed=args.seed
        )
        lines.append(report.csv_row())
        held += report.holds
        total += 1
    _write_or_print("\n".join(lines) + "\n", args.output)
    print(f"{held}/{total} hold")
    return 0 if held == total else 1


def cmd_cell_verify(args) -> int:
    lines = [CELL_CSV_HEADER]
    for t in range(args.trials):
        g = random_bounded_degree_graph(
            args.n, args.max_degree, derive_seed(args.seed, "cell-verify", t)
        )
        w = vandermonde_embedding(g, scale=args.scale)
        max_error, numerical_rank = verify_embedding(g, w)
        dmax = int(degrees(g).max())
        lines.append(
            f"{g.n},{dmax},{w.rank_bound},{numerical_rank},{max_error!r}"
        )
    _write_or_print("\n".join(lines) + "\n", args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eigm",
        description=(
            "Edge-independent graph models: preprocessing, degree fits, "
            "overlap-tunable baselines, statistics, and bound verification."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="preprocess an edge list (binarize, symmetrize, LCC)")
    p.add_argument("--input", required=True)
    p.add_argument("--output-dir", default=".")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("fit", help="fit the degree-matching odds-product model")
    p.add_argument("--input", required=True)
    p.add_argument("--output-dir", default=".")
    p.add_argument("--eps", type=float, default=1e-6)
    p.add_argument("--max-iter", type=int, default=100)
    p.add_argument("--no-damping", action="store_true",
                   help="disable the backtracking line search (pure Newton)")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("sample", help="sample graphs from a stored probability matrix")
    p.add_argument("--input", required=True, help="probability matrix in triplet format")
    p.add_argument("--output-dir", default=".")
    p.add_argument("--samples", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("stats", help="score one sample edge list against a reference")
    p.add_argument("--reference", required=True)
    p.add_argument("--sample", required=True)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("sweep", help="run the overlap sweep over model grids")
    p.add_argument("--config", default=None, help="key = value config file")
    p.add_argument("--input", default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--output-dir", default=None)
    p.add_argument("--plot", action="store_true", help="also emit sweep.svg")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--model", choices=("linear", "ccop", "hdop", "tsvd"),
                   default=None, help="single-model mode instead of a config file")
    p.add_argument("--omega", default=None,
                   help="omega value or comma list (linear, ccop)")
    p.add_argument("--h", default=None, help="pinned-node count(s) (hdop)")
    p.add_argument("--rank", default=None, help="rank value(s) (tsvd)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="check the subgraph-density bounds")
    p.add_argument("--theorem", required=True, choices=("tri", "kcycle", "cc"))
    p.add_argument("--n", type=int, default=20)
    p.add_argument("--gamma", type=float, default=0.1)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None, help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cell-verify", help="check the low-rank softmax embedding")
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--scale", type=float, default=1e4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--output", default=None, help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_cell_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, RuntimeError, np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
