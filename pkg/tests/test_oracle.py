import numpy as np
import pytest
from hypothesis import given

from fastvizing.coloring import verify
from fastvizing.extend import baseline_color
from fastvizing.graph import Graph, complete, complete_bipartite, cycle, path, petersen, star
from fastvizing.oracle import (
    MAX_EDGES, OracleError, brute_force_chromatic_index, connected_graphs, exhaustive_coloring,
)

from conftest import graphs


@pytest.mark.parametrize(
    "g, expected",
    [
        (complete(3), 3), (complete(4), 3), (complete(5), 5), (cycle(5), 3), (cycle(6), 2),
        (cycle(7), 3), (petersen(), 4), (star(4), 4), (path(5), 2),
        (complete_bipartite(3, 3), 3), (Graph(3, []), 0),
    ],
)
def test_known_chromatic_indices(g, expected):
    assert brute_force_chromatic_index(g) == expected


def test_max_colors_bound():
    assert brute_force_chromatic_index(petersen(), max_colors=3) is None
    assert exhaustive_coloring(cycle(5), 2) is None


def test_witness_is_proper():
    col = exhaustive_coloring(petersen(), 4)
    rep = verify(petersen(), col)
    assert rep.complete and rep.colors_used == 4


def test_too_large():
    with pytest.raises(OracleError):
        brute_force_chromatic_index(complete(8))
    assert MAX_EDGES == 24


def test_enumeration_counts():
    # connected graphs by edge count (OEIS A002905)
    counts = {}
    for g in connected_graphs(7):
        counts[g.m] = counts.get(g.m, 0) + 1
    assert [counts[m] for m in range(1, 8)] == [1, 1, 3, 5, 12, 30, 79]


@given(graphs(max_n=7))
def test_vizing_bracket(g):
    if g.m > 14:
        return
    k = brute_force_chromatic_index(g)
    assert k is None or g.max_degree <= k <= g.max_degree + 1
    chi, _ = baseline_color(g, np.random.default_rng(0))
    assert verify(g, chi).colors_used >= k
