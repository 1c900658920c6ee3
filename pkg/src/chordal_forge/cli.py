"""Command-line front end.

Subcommands: generate (random chordal graphs, optionally density-targeted
or k-connected), verify (re-check emitted artifacts), lowerbound (the
size-blowup witness family), bench (timing and operation-count scaling).

Exit codes: 0 success, 1 failed verification check, 2 usage or input
error, 3 density-rejection exhaustion.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Sequence

import numpy as np

from .experiments import (
    RunReport,
    clique_sizes,
    histogram,
    lower_bound_family,
    run_report,
    size_ratio_report,
    write_histogram_csv,
    write_size_ratio_csv,
    write_stats_csv,
)
from .generator import (
    DensityExhaustedError,
    GenConfig,
    GenResult,
    generate,
    generate_k_connected,
    generate_with_density,
)
from .graph import (
    EdgeListFormatError,
    Graph,
    is_chordal,
    read_edge_list,
    write_edge_list,
)
from .representation import (
    RepresentationFormatError,
    clique_tree_check,
    edge_load_bound_check,
    intersection_graph,
    is_minimal,
    minimal_separators,
    pruning_trace,
    read_rep_json,
    representation_size,
    write_rep_json,
)
from .rng import derive_stream

THREADS_ENV = "CHORDAL_FORGE_THREADS"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_EXHAUSTED = 3


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _worker_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            print(f"warning: ignoring non-integer {THREADS_ENV}={raw!r}", file=sys.stderr)
    return os.cpu_count() or 1


def _effective_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    seed = int.from_bytes(os.urandom(8), "little")
    print(f"seed: {seed}", file=sys.stderr)
    return seed


def _run_path(base: str, index: int, runs: int) -> Path:
    path = Path(base)
    if runs == 1:
        return path
    return path.with_name(f"{path.stem}-{index:03d}{path.suffix}")


def _write_graph_json(g: Graph, fh) -> None:
    fh.write(f'{{"n": {g.n}, "m": {g.m}, "edges": [')
    rows = g.edge_array.tolist()
    fh.write(", ".join(f"[{u}, {v}]" for u, v in rows))
    fh.write("]}\n")


def _read_graph_json(fh) -> Graph:
    try:
        data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise EdgeListFormatError(1, f"invalid JSON: {exc}") from None
    if not isinstance(data, dict) or "n" not in data or "edges" not in data:
        raise EdgeListFormatError(1, 'graph JSON needs "n" and "edges"')
    try:
        g = Graph(int(data["n"]), [(int(u), int(v)) for u, v in data["edges"]])
    except (TypeError, ValueError) as exc:
        raise EdgeListFormatError(1, str(exc)) from None
    if "m" in data and int(data["m"]) != g.m:
        raise EdgeListFormatError(1, f'declared m={data["m"]} but found {g.m} edges')
    return g


def _write_graph_dot(g: Graph, fh) -> None:
    fh.write("graph G {\n")
    for v in range(g.n):
        fh.write(f"  {v};\n")
    for u, v in g.edge_array.tolist():
        fh.write(f"  {u} -- {v};\n")
    fh.write("}\n")


def _write_graph(g: Graph, fmt: str, fh) -> None:
    if fmt == "edgelist":
        write_edge_list(g, fh)
    elif fmt == "json":
        _write_graph_json(g, fh)
    else:
        _write_graph_dot(g, fh)


def _read_graph_auto(path: str) -> Graph:
    with open(path, "r", encoding="ascii") as fh:
        head = fh.read(1)
        fh.seek(0)
        if head == "{":
            return _read_graph_json(fh)
        return read_edge_list(fh)


def _open_out(target: str | None):
    """Writer for a path, or stdout for None/'-'; caller must close files."""
    if target is None or target == "-":
        return sys.stdout, False
    return open(target, "w", encoding="ascii"), True


def _emit(target: str | None, writer) -> None:
    fh, close = _open_out(target)
    try:
        writer(fh)
    finally:
        if close:
            fh.close()


def cmd_generate(args) -> int:
    if args.q is not None and args.subset_mode != "bernoulli":
        return _fail("--q requires --subset-mode bernoulli")
    if args.kconn and args.n < args.kconn + 1:
        return _fail(f"--kconn {args.kconn} requires --n of at least {args.kconn + 1}")
    seed = _effective_seed(args)

    def build_config(run: int) -> GenConfig:
        run_seed = seed if args.runs == 1 else derive_stream(seed, run)
        return GenConfig(
            n=args.n,
            seed=run_seed,
            k_max=args.kmax,
            subset_mode=args.subset_mode,
            q=args.q,
            k_conn=args.kconn,
        )

    def one_run(run: int) -> GenResult:
        cfg = build_config(run)
        if args.density is not None:
            return generate_with_density(
                cfg, args.density, args.epsilon, args.max_attempts
            )
        if args.kconn:
            return generate_k_connected(cfg)
        return generate(cfg)

    try:
        workers = min(_worker_count(), args.runs)
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(one_run, range(args.runs)))
        else:
            results = [one_run(run) for run in range(args.runs)]
    except DensityExhaustedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except ValueError as exc:
        return _fail(str(exc))

    for run, res in enumerate(results):
        target = None
        if args.out:
            target = str(_run_path(args.out, run, args.runs))
        _emit(target, lambda fh, g=res.graph: _write_graph(g, args.format, fh))
        if args.rep_out:
            rep_target = str(_run_path(args.rep_out, run, args.runs))
            _emit(rep_target, lambda fh, r=res.rep: write_rep_json(r, fh))

    if args.stats is not None:
        reports = [run_report(r.graph, r.rep, r.elapsed) for r in results]
        _emit(args.stats, lambda fh: write_stats_csv(reports, fh))
    if args.histogram is not None:
        sizes = [clique_sizes(r.rep) for r in results]
        hist = histogram(sizes, args.binwidth)
        _emit(args.histogram, lambda fh: write_histogram_csv(hist, fh))
    return EXIT_OK


def cmd_verify(args) -> int:
    if not args.graph and not args.rep:
        return _fail("nothing to verify: pass --graph and/or --rep")

    g = None
    rep = None
    try:
        if args.graph:
            g = _read_graph_auto(args.graph)
    except EdgeListFormatError as exc:
        return _fail(f"{args.graph}: {exc}")
    except OSError as exc:
        return _fail(str(exc))
    try:
        if args.rep:
            with open(args.rep, "r", encoding="ascii") as fh:
                rep = read_rep_json(fh)
    except RepresentationFormatError as exc:
        return _fail(f"{args.rep}: {exc}")
    except OSError as exc:
        return _fail(str(exc))

    checks: list[tuple[str, bool]] = []
    if g is not None:
        checks.append(("chordal", is_chordal(g) is not None))
    if rep is not None:
        minimal = is_minimal(rep)
        checks.append(("minimal", minimal))
        checks.append(("clique-tree", clique_tree_check(rep)))
        if minimal:
            rg = intersection_graph(rep)
            trace = pruning_trace(rep)
            identity_ok = (
                trace.identity_value() == 2 * rg.m + rg.n
                and sum(trace.s_values()) == rg.n
                and trace.satisfies_bounds()
            )
            checks.append(("pruning-identity", identity_ok))
            checks.append(("edge-load-bound", edge_load_bound_check(rep)))
            checks.append(("size-bound", representation_size(rep) <= 2 * rg.m + rg.n))
            checks.append(
                ("separator-count", len(minimal_separators(rep).distinct_separators()) <= max(rep.t - 1, 0))
            )
        else:
            for name in ("pruning-identity", "edge-load-bound", "size-bound", "separator-count"):
                print(f"{name}: SKIP (requires minimal representation)")
    if g is not None and rep is not None:
        checks.append(("graph-matches-representation", g == intersection_graph(rep)))

    failed = False
    for name, ok in checks:
        print(f"{name}: {'PASS' if ok else 'FAIL'}")
        failed = failed or not ok
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def cmd_lowerbound(args) -> int:
    if args.k < 1:
        return _fail(f"--k must be at least 1, got {args.k}")
    rep = lower_bound_family(args.k)
    report = size_ratio_report(rep)
    if args.out:
        g = intersection_graph(rep)
        _emit(args.out, lambda fh: write_edge_list(g, fh))
    if args.rep_out:
        _emit(args.rep_out, lambda fh: write_rep_json(rep, fh))
    _emit(args.report, lambda fh: write_size_ratio_csv([report], fh))
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        return _fail(f"--sizes must be comma-separated integers, got {args.sizes!r}")
    if not sizes or any(s < 1 for s in sizes):
        return _fail(f"--sizes needs positive integers, got {args.sizes!r}")
    if args.repeats < 1:
        return _fail(f"--repeats must be at least 1, got {args.repeats}")
    seed = _effective_seed(args)

    rows: list[tuple[int, int, int, float]] = []
    stream = 0
    try:
        for n in sizes:
            for _ in range(args.repeats):
                cfg = GenConfig(n=n, seed=derive_stream(seed, stream))
                stream += 1
                if args.density is not None:
                    res = generate_with_density(
                        cfg, args.density, args.epsilon, args.max_attempts
                    )
                else:
                    res = generate(cfg)
                rows.append((n, res.graph.m, res.ops, res.elapsed))
    except DensityExhaustedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED

    def write(fh):
        fh.write("n,m,ops,seconds\n")
        for n, m, ops, secs in rows:
            fh.write(f"{n},{m},{ops},{secs:.6f}\n")
        x = np.array([float(n + m) for n, m, _, _ in rows])
        y = np.array([float(ops) for _, _, ops, _ in rows])
        slope, intercept = np.polyfit(x, y, 1)
        pred = slope * x + intercept
        ss_res = float(np.sum((y - pred) ** 2))
        ss_tot = float(np.sum((y - y.mean()) ** 2))
        r2 = 1.0 - ss_res / ss_tot if ss_tot else 1.0
        ratios = y / x
        fh.write(f"# fit: ops ~= {slope:.6f}*(n+m) + {intercept:.1f}, r2={r2:.6f}\n")
        fh.write(
            f"# ops/(n+m): min={ratios.min():.6f} max={ratios.max():.6f} "
            f"spread={ratios.max() / ratios.min():.6f}\n"
        )

    _emit(args.out, write)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chordal-forge",
        description="Random chordal graphs from contraction-minimal subtree representations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="generate random chordal graphs")
    p_gen.add_argument("--n", type=int, required=True, help="number of vertices")
    p_gen.add_argument("--seed", type=int, help="RNG seed (random if omitted)")
    p_gen.add_argument("--density", type=float, help="target edge density in (0,1)")
    p_gen.add_argument("--epsilon", type=float, default=0.05, help="density tolerance")
    p_gen.add_argument("--kconn", type=int, default=0, help="required connectivity")
    p_gen.add_argument("--runs", type=int, default=1, help="number of graphs")
    p_gen.add_argument("--kmax", type=int, help="cap on vertices per tree node")
    p_gen.add_argument(
        "--subset-mode",
        choices=["uniform-proper", "bernoulli"],
        default="uniform-proper",
        help="distribution of the extended subtree subset",
    )
    p_gen.add_argument("--q", type=float, help="persistence probability for bernoulli mode")
    p_gen.add_argument(
        "--format", choices=["edgelist", "json", "dot"], default="edgelist"
    )
    p_gen.add_argument("--out", help="graph output path (stdout if omitted)")
    p_gen.add_argument("--rep-out", help="representation JSON output path")
    p_gen.add_argument(
        "--stats", nargs="?", const="-", help="write per-run stats CSV (path or stdout)"
    )
    p_gen.add_argument(
        "--histogram", nargs="?", const="-",
        help="write clique-size histogram CSV (path or stdout)",
    )
    p_gen.add_argument("--binwidth", type=int, default=5, help="histogram bin width")
    p_gen.add_argument("--max-attempts", type=int, default=100,
                       help="density rejection budget per run")
    p_gen.set_defaults(func=cmd_generate)

    p_ver = sub.add_parser("verify", help="verify emitted graph/representation files")
    p_ver.add_argument("--graph", help="edge-list or graph JSON path")
    p_ver.add_argument("--rep", help="representation JSON path")
    p_ver.set_defaults(func=cmd_verify)

    p_low = sub.add_parser("lowerbound", help="emit the size-blowup witness family")
    p_low.add_argument("--k", type=int, required=True, help="family index (>= 1)")
    p_low.add_argument("--out", help="graph edge-list output path")
    p_low.add_argument("--rep-out", help="representation JSON output path")
    p_low.add_argument("--report", nargs="?", const="-", default="-",
                       help="size report CSV (path or stdout)")
    p_low.set_defaults(func=cmd_lowerbound)

    p_bench = sub.add_parser("bench", help="operation-count and timing scaling")
    p_bench.add_argument("--sizes", required=True, help="comma-separated vertex counts")
    p_bench.add_argument("--density", type=float, help="target density per run")
    p_bench.add_argument("--epsilon", type=float, default=0.25,
                         help="density tolerance for bench runs")
    p_bench.add_argument("--repeats", type=int, default=3, help="runs per size")
    p_bench.add_argument("--seed", type=int, help="RNG seed (random if omitted)")
    p_bench.add_argument("--max-attempts", type=int, default=1000,
                         help="density rejection budget per run")
    p_bench.add_argument("--out", help="CSV output path (stdout if omitted)")
    p_bench.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
