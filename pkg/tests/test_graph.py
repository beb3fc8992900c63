import io

import pytest
from hypothesis import given, strategies as st

from fastvizing.graph import (
    DuplicateEdgeError, Graph, GraphError, SelfLoopError, VertexRangeError,
    complete, complete_bipartite, cycle, d_regular, dump_graph, generate, gnm,
    load_graph, path, petersen, star,
)

from conftest import graphs


def test_edge_list_path():
    g = load_graph("0 1\n1 2\n")
    assert (g.n, g.m, g.max_degree) == (3, 2, 2)


def test_edge_list_comments_and_blank_lines():
    g = load_graph("# header\n\n0 1   # trailing\n  \n1 2\n")
    assert g.edges() == [(0, 1), (1, 2)]


def test_explicit_vertex_count_keeps_isolated_vertices():
    g = load_graph("0 1\n", n=5)
    assert g.n == 5 and g.degree(4) == 0


def test_self_loop_rejected_with_line_number():
    with pytest.raises(SelfLoopError) as exc:
        load_graph("0 1\n0 0\n")
    assert exc.value.line == 2


def test_duplicate_rejected():
    with pytest.raises(DuplicateEdgeError):
        load_graph("0 1\n1 0\n")


def test_out_of_range_rejected():
    with pytest.raises(VertexRangeError):
        load_graph("0 7\n", n=3)
    with pytest.raises(VertexRangeError):
        load_graph("-1 2\n")


@pytest.mark.parametrize("text", ["0 1 2\n", "a b\n", "0\n"])
def test_malformed_lines(text):
    with pytest.raises(GraphError):
        load_graph(text)


def test_dimacs_cycle():
    text = "c five cycle\np edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n"
    g = load_graph(text, "dimacs")
    assert g == cycle(5) and g.max_degree == 2


def test_dimacs_errors():
    with pytest.raises(GraphError):
        load_graph("p edge 3 2\ne 1 2\n", "dimacs")  # count mismatch
    with pytest.raises(GraphError):
        load_graph("e 1 2\np edge 3 1\n", "dimacs")
    with pytest.raises(VertexRangeError):
        load_graph("p edge 2 1\ne 1 3\n", "dimacs")
    with pytest.raises(GraphError):
        load_graph("p edge 2 1\nx 1 2\n", "dimacs")


def test_load_from_bytes_and_file_objects():
    assert load_graph(b"0 1\n").m == 1
    assert load_graph(io.StringIO("0 1\n1 2\n")).m == 2


def test_generators_basic():
    k4 = complete(4)
    assert (k4.m, k4.max_degree) == (6, 3)
    assert cycle(5).max_degree == 2 and cycle(5).m == 5
    assert complete_bipartite(3, 4).m == 12
    assert star(5).max_degree == 5 and star(5).degree(0) == 5
    assert path(4).m == 3
    p = petersen()
    assert (p.n, p.m) == (10, 15) and all(p.degree(u) == 3 for u in range(10))


def test_gnm_deterministic_and_exact():
    a, b = gnm(100, 300, seed=1), gnm(100, 300, seed=1)
    assert a == b and a.m == 300
    assert gnm(100, 300, seed=2) != a
    dense = gnm(30, 400, seed=3)  # sampled through the complement
    assert dense.m == 400


def test_d_regular():
    g = d_regular(50, 7 + 1, seed=4)
    assert all(g.degree(u) == 8 for u in range(50))
    assert g == d_regular(50, 8, seed=4)
    with pytest.raises(GraphError):
        d_regular(5, 3)


def test_generate_dispatch_and_errors():
    assert generate("complete", [4]) == complete(4)
    with pytest.raises(GraphError):
        generate("nope", [])
    with pytest.raises(GraphError):
        generate("gnm", [10])
    with pytest.raises(GraphError):
        gnm(4, 10)
    with pytest.raises(GraphError):
        cycle(2)


@given(graphs())
def test_degree_sum_and_symmetry(g):
    assert sum(len(a) for a in g.adj) == 2 * g.m
    assert g.max_degree == max((len(a) for a in g.adj), default=0)
    for u in range(g.n):
        for v, e in g.adj[u]:
            assert (u, e) in g.adj[v]
            assert g.other(e, u) == v
            assert g.edge_id(u, v) == e


@given(graphs(), st.sampled_from(["edge-list", "dimacs"]))
def test_round_trip(g, fmt):
    h = load_graph(dump_graph(g, fmt), fmt, **({"n": g.n} if fmt == "edge-list" else {}))
    assert h == g


def test_graph_constructor_checks():
    with pytest.raises(SelfLoopError):
        Graph(2, [(1, 1)])
    with pytest.raises(DuplicateEdgeError):
        Graph(2, [(0, 1), (1, 0)])
    with pytest.raises(KeyError):
        complete(3).edge_id(0, 0)


def test_induced_edges():
    g = complete(4)
    assert sorted(g.induced([0, 1, 2])) == [g.edge_id(0, 1), g.edge_id(0, 2), g.edge_id(1, 2)]
