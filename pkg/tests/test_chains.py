import numpy as np
import pytest
from hypothesis import given, strategies as st

from fastvizing.chains import (
    ChainError, Done, Shifted, execute_full, maximal_paths, plan_chain, trace_alt_path,
    truncated_vizing, vizing_extend, vizing_fan,
)
from fastvizing.coloring import PartialColoring, verify
from fastvizing.graph import Graph, path

from conftest import graphs, partial_coloring

# Hand-built instance with Δ = 3 (palette 1..4). Center u=0 has the uncolored
# edge to v0=1 and colored edges (0,2)=1, (0,3)=2. Blocking colors c_u=3, c_v=2.
# The fan is 1 -> 2 -> 3 with colors 1, 2, 1, so color 1 repeats (j = 0) and the
# {4, 1}-path from 0 runs 0-2-7-8-9-10-11 (six edges).
COMB_EDGES = {
    (0, 1): 0, (0, 2): 1, (0, 3): 2,
    (1, 4): 3, (1, 5): 4,
    (2, 6): 3, (2, 7): 4, (7, 8): 1, (8, 9): 4, (9, 10): 1, (10, 11): 4,
    (3, 12): 3,
}


def comb():
    g = Graph(13, list(COMB_EDGES))
    chi = PartialColoring.from_colors(g, list(COMB_EDGES.values()))
    return g, chi


def colors_by_pair(g, chi):
    return {g.edges()[e]: chi.color_of[e] for e in range(g.m)}


def test_comb_fan_and_plan():
    g, chi = comb()
    assert g.max_degree == 3
    plan = plan_chain(chi, 0, 1, 3, 2)
    assert plan.fan.vertices == [1, 2, 3] and plan.fan.colors == [1, 2, 1]
    assert plan.fan.primed_kind == "other_primed" and plan.anchor == 0 and plan.c == 4
    assert plan.path.vertices == [0, 2, 7, 8, 9, 10, 11]
    assert plan.path.colors == (4, 1)


def test_comb_truncated_at_three():
    g, chi = comb()
    res = truncated_vizing(chi, 0, 1, 3, 2, t=3)
    assert isinstance(res, Shifted)
    assert (res.u, res.v, res.c_u, res.c_v) == (7, 8, 4, 1)
    assert res.recolors == 4 and res.path_length == 3 and not res.overlapping
    got = colors_by_pair(g, chi)
    assert got[(0, 1)] == 1 and got[(0, 2)] == 4 and got[(2, 7)] == 1 and got[(7, 8)] == 0
    assert got[(8, 9)] == 4  # beyond the cut nothing moves
    rep = verify(g, chi)
    assert rep.proper and rep.uncolored == 1
    # finishing from the new hole completes the coloring
    done = truncated_vizing(chi, res.u, res.v, res.c_u, res.c_v, t=100)
    assert isinstance(done, Done) and verify(g, chi).complete


def test_comb_full_chain_when_t_covers_path():
    g, chi = comb()
    res = truncated_vizing(chi, 0, 1, 3, 2, t=6)
    assert isinstance(res, Done) and res.path_length == 6
    got = colors_by_pair(g, chi)
    assert [got[p] for p in [(0, 1), (0, 2), (2, 7), (7, 8), (8, 9), (9, 10), (10, 11)]] == [
        1, 4, 1, 4, 1, 4, 1,
    ]
    assert verify(g, chi).complete


def test_alternating_path_on_path_graph():
    g = path(10)
    chi = PartialColoring.from_colors(g, [1 + (i % 2) for i in range(9)])
    p = trace_alt_path(chi, 0, (1, 2))
    assert p.vertices == list(range(10)) and not p.truncated
    q = trace_alt_path(chi, 0, (1, 2), cap=4)
    assert q.length == 4 and q.truncated
    r = trace_alt_path(chi, 0, (1, 2), cap=9)
    assert r.length == 9 and not r.truncated
    with pytest.raises(ChainError):
        trace_alt_path(chi, 3, (1, 2))
    with pytest.raises(ChainError):
        trace_alt_path(chi, 0, (1, 1))


def test_path_from_vertex_missing_both_colors_is_empty():
    g = path(3)
    chi = PartialColoring(g)
    assert trace_alt_path(chi, 0, (1, 2)).length == 0


def test_fan_preconditions():
    g, chi = comb()
    with pytest.raises(ChainError):
        vizing_fan(chi, 0, 2, 3, 2)  # colored edge
    with pytest.raises(ChainError):
        vizing_fan(chi, 0, 1, 1, 2)  # 1 not missing at 0
    with pytest.raises(ChainError):
        vizing_fan(chi, 0, 5, 3, 2)  # not an edge


def test_common_color_fan_colors_directly():
    g = path(3)
    chi = PartialColoring(g)
    fan = vizing_fan(chi, 0, 1, 1, 1)
    assert fan.primed_kind == "extends" and chi.color_of[g.edge_id(0, 1)] == 1


def _random_instance(g, seed):
    chi = partial_coloring(g, seed, frac=0.4)
    rng = np.random.default_rng(seed)
    holes = [e for e in range(g.m) if not chi.color_of[e]]
    return chi, rng, holes


def _random_blocking(chi, u, v, rng):
    mu, mv = chi.missing(u), chi.missing(v)
    return int(rng.choice(mu)), int(rng.choice(mv))


@given(graphs(max_n=10), st.integers(0, 10**6))
def test_vizing_extend_colors_one_edge(g, seed):
    if g.m == 0:
        return
    chi, rng, holes = _random_instance(g, seed)
    for e in holes:
        u, v = (g.eu[e], g.ev[e]) if rng.random() < 0.5 else (g.ev[e], g.eu[e])
        c_u, c_v = _random_blocking(chi, u, v, rng)
        before = chi.uncolored
        vizing_extend(chi, u, v, c_u, c_v)
        assert chi.uncolored == before - 1 and chi.color_of[e]
        assert verify(g, chi).proper
    chi.check_consistency()


def _case(plan):
    if plan.path is None:
        return "fan"
    if plan.overlapping:
        end_hit = plan.path.length and plan.path.end == plan.fan.center
        return "cv_primed/end" if end_hit else "cv_primed/other"
    end_hit = plan.path.length and plan.path.end == plan.fan.vertices[plan.anchor]
    return "other_primed/end" if end_hit else "other_primed/other"


def test_all_completion_cases_occur_and_stay_proper():
    from fastvizing.graph import d_regular, gnm

    seen = {}
    for seed in range(400):
        g = d_regular(12, 5, seed=seed) if seed % 2 else gnm(12, 30, seed=seed)
        chi, rng, holes = _random_instance(g, seed)
        for e in holes:
            u, v = g.eu[e], g.ev[e]
            # a low c_v makes it more likely to reappear in the fan
            c_u, c_v = int(rng.choice(chi.missing(u))), chi.missing(v)[0]
            plan = plan_chain(chi, u, v, c_u, c_v)
            kind = _case(plan)
            seen[kind] = seen.get(kind, 0) + 1
            execute_full(chi, plan)
            assert verify(g, chi).proper
        assert chi.uncolored == 0
    assert set(seen) == {
        "fan", "cv_primed/end", "cv_primed/other", "other_primed/end", "other_primed/other",
    }, seen


@given(graphs(max_n=10), st.integers(0, 10**6), st.integers(1, 6))
def test_truncated_vizing_invariants(g, seed, t):
    if g.m == 0:
        return
    chi, rng, holes = _random_instance(g, seed)
    delta = g.max_degree
    for e in holes:
        u, v = g.eu[e], g.ev[e]
        c_u, c_v = _random_blocking(chi, u, v, rng)
        for _ in range(50):
            before = chi.uncolored
            res = truncated_vizing(chi, u, v, c_u, c_v, t)
            assert res.recolors <= t + delta + 1
            assert verify(g, chi).proper
            if isinstance(res, Done):
                assert chi.uncolored == before - 1
                break
            assert chi.uncolored == before
            f = g.edge_id(res.u, res.v)
            assert not chi.color_of[f]
            assert chi.is_missing(res.u, res.c_u) and chi.is_missing(res.v, res.c_v)
            u, v, c_u, c_v = res.u, res.v, res.c_u, res.c_v
        else:
            vizing_extend(chi, u, v, c_u, c_v)
    assert chi.uncolored == 0


@given(graphs(max_n=10), st.integers(0, 10**6))
def test_maximal_paths_partition_two_color_edges(g, seed):
    if g.m == 0:
        return
    chi = partial_coloring(g, seed, frac=0.2)
    k = chi.k
    for x in range(1, k + 1):
        for y in range(x + 1, k + 1):
            paths = maximal_paths(chi, x, y)
            used = [e for p in paths for e in p.edges]
            assert len(used) == len(set(used))
            for p in paths:
                for a in (p.start, p.end):
                    assert chi.is_missing(a, x) or chi.is_missing(a, y)
                for e in p.edges:
                    assert chi.color_of[e] in (x, y)
