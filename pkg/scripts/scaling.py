"""Dense n=4000 scaling report: per-edge work of fast vs baseline and phase accounting.

    python3 scripts/scaling.py --seeds 2 -o scaling.csv

Prints one summary line per graph and exits 1 if phases do not sum to m or
any coloring is improper. The work ratio is reported, not enforced.
"""
import argparse
import csv
import sys

from fastvizing.cli import BENCH_FIELDS, GRIDS, run_bench


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=1)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("-o", "--output", default="scaling.csv")
    args = ap.parse_args()
    rows = run_bench(GRIDS["dense4000"], range(args.seeds), ["baseline", "fast"], ["practical"], args.jobs)
    with open(args.output, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=BENCH_FIELDS, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    bad = False
    by_key = {}
    for r in rows:
        by_key.setdefault((r["params"], r["seed"]), {})[r["algo"]] = r
        bad |= not r["proper"] or r["uncolored"] != 0 or r["phase_sum"] != r["m"]
    for (params, seed), pair in sorted(by_key.items()):
        f, b = pair["fast"], pair["baseline"]
        ratio = f["work_per_edge"] / b["work_per_edge"]
        print(
            f"gnm {params} seed={seed} Δ={f['max_degree']} branch={f['branch']} "
            f"work/edge fast={f['work_per_edge']:.2f} baseline={b['work_per_edge']:.2f} "
            f"ratio={ratio:.2f} phase_sum={f['phase_sum']}/{f['m']}"
        )
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
