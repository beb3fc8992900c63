"""Command line: ``fastvizing {color,verify,gen,bench,oracle}``.

Exit codes: 0 success, 1 invalid coloring or failed check, 2 I/O error,
3 parse error or bad parameters.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from .coloring import dump_coloring, load_coloring, verify
from .graph import GraphError, dump_graph, generate, load_graph
from .oracle import OracleError, brute_force_chromatic_index, exhaustive_coloring
from .pipeline import PipelineConfig, color

EXIT_OK, EXIT_INVALID, EXIT_IO, EXIT_PARSE = 0, 1, 2, 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write(path: Optional[str], text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _err(msg: str) -> None:
    print(f"fastvizing: {msg}", file=sys.stderr)


# ------------------------------------------------------------------ color


def cmd_color(args) -> int:
    g = load_graph(_read(args.input), args.format)
    cfg = PipelineConfig.for_graph(
        g, args.mode, args.seed, ell=args.ell, cap_l=args.cap_l,
        kappa_iters=args.kappa, threshold=args.threshold, timing=args.timing,
    )
    chi, stats = color(g, cfg, args.algo)
    _write(args.output, dump_coloring(g, chi))
    doc = json.dumps(stats, sort_keys=True) + "\n"
    if args.stats_out:
        with open(args.stats_out, "w") as fh:
            fh.write(doc)
    else:
        sys.stderr.write(doc)
    rep = verify(g, chi)
    return EXIT_OK if rep.complete else EXIT_INVALID


def cmd_verify(args) -> int:
    g = load_graph(_read(args.graph), args.format)
    colors = load_coloring(g, io.StringIO(_read(args.coloring)))
    rep = verify(g, colors)
    status = "OK" if rep.complete else "INVALID"
    print(
        f"{status} proper={rep.proper} uncolored={rep.uncolored} "
        f"colors_used={rep.colors_used} palette={rep.palette}"
    )
    for line in rep.violations:
        print(f"violation: {line}")
    if rep.uncolored:
        print(f"violation: {rep.uncolored} uncolored edge(s)")
    return EXIT_OK if rep.complete else EXIT_INVALID


def cmd_gen(args) -> int:
    g = generate(args.model, args.params, args.seed)
    _write(args.output, dump_graph(g, args.format))
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = load_graph(_read(args.graph), args.format)
    k = brute_force_chromatic_index(g, args.max_colors)
    print("none" if k is None else k)
    if args.witness and k is not None:
        sys.stdout.write(dump_coloring(g, exhaustive_coloring(g, k)))
    return EXIT_OK


# ------------------------------------------------------------------ bench

GRIDS = {
    # (model, params) pairs
    "tiny": [("gnm", (60, 400)), ("complete", (20,))],
    "small": [
        ("gnm", (300, 1500)), ("gnm", (300, 9000)), ("gnm", (500, 25000)),
        ("d_regular", (400, 60)), ("complete", (50,)),
    ],
    "medium": [("gnm", (1000, 20000)), ("gnm", (1000, 100000)), ("d_regular", (1000, 120))],
    "dense4000": [("gnm", (4000, 400000)), ("gnm", (4000, 800000))],
}

BENCH_FIELDS = [
    "model", "params", "n", "m", "max_degree", "seed", "algo", "mode", "branch",
    "proper", "uncolored", "colors_used", "work", "work_per_edge", "phase_sum",
    "step1_base", "step2_light", "step3_heavy", "step3_extend", "fallback",
    "extract_attempts", "extend_calls", "extend_max_iterations", "truncations",
    "extend_fallbacks", "longest_chain", "wall_seconds",
]


def bench_row(job) -> dict:
    model, params, seed, algo, mode = job
    g = generate(model, params, seed)
    cfg = PipelineConfig.for_graph(g, mode, seed)
    t0 = time.perf_counter()
    _, st = color(g, cfg, algo)
    wall = time.perf_counter() - t0
    ph = st["phases"]
    ext = st.get("extend", {})
    iters = [int(k) for k in ext.get("iterations", {})]
    return {
        "model": model, "params": " ".join(map(str, params)), "n": g.n, "m": g.m,
        "max_degree": g.max_degree, "seed": seed, "algo": algo, "mode": mode,
        "branch": st["branch"], "proper": st["proper"], "uncolored": st["uncolored"],
        "colors_used": st["colors_used"], "work": st["work"], "work_per_edge": st["work_per_edge"],
        "phase_sum": sum(ph.values()),
        **{k: ph.get(k, ph.get("baseline", 0) if k == "step1_base" else 0)
           for k in ("step1_base", "step2_light", "step3_heavy", "step3_extend", "fallback")},
        "extract_attempts": st.get("extract", {}).get("attempts", 0),
        "extend_calls": ext.get("calls", 0),
        "extend_max_iterations": max(iters, default=0),
        "truncations": ext.get("truncations", 0),
        "extend_fallbacks": ext.get("fallbacks", 0),
        "longest_chain": ext.get("longest_chain", 0),
        "wall_seconds": round(wall, 4),
    }


def run_bench(grid, seeds, algos, modes, jobs: int = 1) -> list[dict]:
    work = [(model, params, s, a, md) for model, params in grid for s in seeds for a in algos for md in modes]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            return list(ex.map(bench_row, work))
    return [bench_row(j) for j in work]


def cmd_bench(args) -> int:
    rows = run_bench(GRIDS[args.grid], range(args.seeds), args.algos, args.modes, args.jobs)
    out = io.StringIO()
    w = csv.DictWriter(out, fieldnames=BENCH_FIELDS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    _write(args.output, out.getvalue())
    bad = [r for r in rows if not r["proper"] or r["uncolored"] or r["phase_sum"] != r["m"]]
    return EXIT_INVALID if bad else EXIT_OK


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fastvizing", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    fmt = dict(choices=["edge-list", "dimacs"], default="edge-list")

    c = sub.add_parser("color", help="(Δ+1)-edge color a graph")
    c.add_argument("input", help="graph file, '-' for stdin")
    c.add_argument("output", nargs="?", help="coloring file (default stdout)")
    c.add_argument("--algo", choices=["baseline", "fast"], default="fast")
    c.add_argument("--mode", choices=["paper", "practical"], default="practical")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--ell", type=int)
    c.add_argument("--cap-l", type=int, dest="cap_l", help="chain length parameter L")
    c.add_argument("--kappa", type=int, help="iteration cap before the plain-Vizing fallback")
    c.add_argument("--threshold", type=float, help="minimum Δ for the star pipeline")
    c.add_argument("--stats-out", dest="stats_out", help="write JSON stats here instead of stderr")
    c.add_argument("--timing", action="store_true", help="include wall time in the stats")
    c.add_argument("--format", **fmt)
    c.set_defaults(fn=cmd_color)

    v = sub.add_parser("verify", help="check a coloring against a graph")
    v.add_argument("graph")
    v.add_argument("coloring")
    v.add_argument("--format", **fmt)
    v.set_defaults(fn=cmd_verify)

    gn = sub.add_parser("gen", help="generate a graph")
    gn.add_argument("model")
    gn.add_argument("params", nargs="*", type=int)
    gn.add_argument("--seed", type=int, default=0)
    gn.add_argument("-o", "--output")
    gn.add_argument("--format", **fmt)
    gn.set_defaults(fn=cmd_gen)

    b = sub.add_parser("bench", help="run a benchmark grid and print CSV")
    b.add_argument("--grid", choices=sorted(GRIDS), default="small")
    b.add_argument("--seeds", type=int, default=1, help="number of seeds per graph")
    b.add_argument("--algos", nargs="+", choices=["baseline", "fast"], default=["baseline", "fast"])
    b.add_argument("--modes", nargs="+", choices=["paper", "practical"], default=["practical"])
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("-o", "--output")
    b.set_defaults(fn=cmd_bench)

    o = sub.add_parser("oracle", help="exact chromatic index of a tiny graph")
    o.add_argument("graph")
    o.add_argument("--max-colors", type=int, dest="max_colors")
    o.add_argument("--witness", action="store_true", help="also print an optimal coloring")
    o.add_argument("--format", **fmt)
    o.set_defaults(fn=cmd_oracle)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (GraphError, OracleError, ValueError) as exc:
        _err(str(exc))
        return EXIT_PARSE
    except OSError as exc:
        _err(str(exc))
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
