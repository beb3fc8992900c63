"""Run a benchmark grid and write CSV; thin wrapper over ``fastvizing bench``.

    python3 scripts/bench.py --grid small --seeds 3 -o bench_small.csv
"""
import sys

from fastvizing.cli import main

if __name__ == "__main__":
    sys.exit(main(["bench", *sys.argv[1:]]))
