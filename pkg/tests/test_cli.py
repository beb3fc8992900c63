import csv
import io
import json
import subprocess
import sys

import pytest

from fastvizing.cli import BENCH_FIELDS, bench_row, main
from fastvizing.coloring import load_coloring, verify
from fastvizing.graph import load_graph


@pytest.fixture
def k5(tmp_path):
    p = tmp_path / "k5.txt"
    assert main(["gen", "complete", "5", "-o", str(p)]) == 0
    return p


def test_gen_and_color_round_trip(k5, tmp_path, capsys):
    out, stats = tmp_path / "k5.col", tmp_path / "stats.json"
    assert main(["color", str(k5), str(out), "--stats-out", str(stats)]) == 0
    g = load_graph(k5.read_text())
    rep = verify(g, load_coloring(g, out.read_text()))
    assert rep.complete and rep.colors_used == 5
    doc = json.loads(stats.read_text())
    assert doc["proper"] and doc["m"] == 10 and "wall_seconds" not in doc
    assert main(["verify", str(k5), str(out)]) == 0
    assert capsys.readouterr().out.startswith("OK")


def test_stats_to_stderr_and_timing(k5, capsys):
    assert main(["color", str(k5), "--timing", "--seed", "3", "--algo", "baseline"]) == 0
    cap = capsys.readouterr()
    doc = json.loads(cap.err)
    assert doc["seed"] == 3 and doc["algo"] == "baseline" and "wall_seconds" in doc
    assert len(cap.out.strip().splitlines()) == 10


def test_verify_reports_violations(k5, tmp_path, capsys):
    bad = tmp_path / "bad.col"
    bad.write_text("0 1 1\n0 2 1\n")
    assert main(["verify", str(k5), str(bad)]) == 1
    out = capsys.readouterr().out
    assert out.startswith("INVALID") and "violation" in out


def test_exit_codes(tmp_path, capsys):
    assert main(["color", str(tmp_path / "missing.txt")]) == 2
    loop = tmp_path / "loop.txt"
    loop.write_text("0 1\n1 1\n")
    assert main(["color", str(loop)]) == 3
    assert "line 2" in capsys.readouterr().err
    assert main(["gen", "gnm", "5"]) == 3


def test_dimacs_and_overrides(tmp_path, capsys):
    p = tmp_path / "g.col"
    assert main(["gen", "petersen", "-o", str(p), "--format", "dimacs"]) == 0
    assert p.read_text().startswith("p edge 10 15")
    assert main(["color", str(p), "--format", "dimacs", "--cap-l", "1", "--kappa", "2",
                 "--ell", "1", "--threshold", "1"]) == 0
    doc = json.loads(capsys.readouterr().err)
    assert doc["extend_config"]["L"] == 1 and doc["threshold"] == 1


def test_oracle_command(tmp_path, capsys):
    p = tmp_path / "pet.txt"
    main(["gen", "petersen", "-o", str(p)])
    assert main(["oracle", str(p), "--witness"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "4" and len(lines) == 16
    assert main(["oracle", str(p), "--max-colors", "3"]) == 0
    assert capsys.readouterr().out.strip() == "none"
    big = tmp_path / "k8.txt"
    main(["gen", "complete", "8", "-o", str(big)])
    assert main(["oracle", str(big)]) == 3


def test_bench_tiny(tmp_path):
    out = tmp_path / "b.csv"
    assert main(["bench", "--grid", "tiny", "--seeds", "1", "-o", str(out)]) == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert len(rows) == 4 and list(rows[0]) == BENCH_FIELDS
    for r in rows:
        assert r["proper"] == "True" and int(r["phase_sum"]) == int(r["m"])


def test_bench_row_fields():
    row = bench_row(("cycle", (7,), 0, "fast", "practical"))
    assert set(row) == set(BENCH_FIELDS) and row["colors_used"] == 3


def test_module_entry_point(k5):
    r = subprocess.run(
        [sys.executable, "-m", "fastvizing", "color", str(k5), "--seed", "1"],
        capture_output=True, text=True, check=True,
    )
    assert len(r.stdout.splitlines()) == 10 and json.loads(r.stderr)["proper"]
