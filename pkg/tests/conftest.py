import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from fastvizing.coloring import PartialColoring
from fastvizing.extend import baseline_color
from fastvizing.graph import Graph

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def graphs(draw, max_n=12, min_n=2):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    return Graph(n, chosen)


def partial_coloring(g: Graph, seed: int, frac: float = 0.3) -> PartialColoring:
    """Complete baseline coloring with a random fraction of edges uncolored again."""
    rng = np.random.default_rng(seed)
    chi, _ = baseline_color(g, rng)
    for e in range(g.m):
        if rng.random() < frac:
            chi.uncolor(e)
    return chi


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def long_chain(tail: int):
    """Δ=3 instance whose initial blocking colors force a chain of ``tail + 1`` edges.

    Hole (0,1); 0 misses {3,4}, 1 misses {1,2}. The fan 1 -> 2 -> 3 repeats
    color 2, and the {4,2}-path from 0 runs 0-2-8-9-... for ``tail`` more edges.
    """
    edges = {(0, 1): 0, (0, 2): 2, (0, 3): 1, (1, 4): 3, (1, 5): 4, (2, 6): 3, (3, 7): 3}
    prev = 2
    for i in range(tail):
        edges[(prev, 8 + i)] = 4 if i % 2 == 0 else 2
        prev = 8 + i
    g = Graph(8 + tail, list(edges))
    return g, PartialColoring.from_colors(g, list(edges.values()))


# acceptance criteria report: (number, passed, detail), printed after the run
ACCEPTANCE: list = []


def record(number: int, ok: bool, detail: str) -> bool:
    ACCEPTANCE.append((number, ok, detail))
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
