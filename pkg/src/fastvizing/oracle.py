"""Exact edge coloring by exhaustive search, for tiny graphs only."""
from __future__ import annotations

from typing import Iterator, Optional

from .graph import Graph

MAX_EDGES = 24


class OracleError(ValueError):
    pass


def _order(g: Graph) -> list[int]:
    deg = [len(a) for a in g.adj]
    return sorted(
        range(g.m),
        key=lambda e: (-max(deg[g.eu[e]], deg[g.ev[e]]), -min(deg[g.eu[e]], deg[g.ev[e]]), e),
    )


def exhaustive_coloring(g: Graph, k: int) -> Optional[list[int]]:
    """A proper edge coloring with colors ``1..k``, or ``None`` if there is none.

    Plain backtracking; a new color may only be one above the largest color
    used so far, which removes color permutations from the search.
    """
    if g.m > MAX_EDGES:
        raise OracleError(f"oracle limited to {MAX_EDGES} edges, got {g.m}")
    if g.m == 0:
        return []
    if k < 1:
        return None
    order = _order(g)
    eu, ev = g.eu, g.ev
    used = [0] * g.n
    colors = [0] * g.m

    def go(i: int, top: int) -> bool:
        if i == len(order):
            return True
        e = order[i]
        a, b = eu[e], ev[e]
        busy = used[a] | used[b]
        for c in range(1, min(top + 1, k) + 1):
            bit = 1 << c
            if busy & bit:
                continue
            used[a] |= bit
            used[b] |= bit
            colors[e] = c
            if go(i + 1, max(top, c)):
                return True
            used[a] ^= bit
            used[b] ^= bit
        colors[e] = 0
        return False

    return colors if go(0, 0) else None


def brute_force_chromatic_index(g: Graph, max_colors: Optional[int] = None) -> Optional[int]:
    """Smallest ``k <= max_colors`` with a proper ``k``-edge coloring (``None`` if above)."""
    if g.m > MAX_EDGES:
        raise OracleError(f"oracle limited to {MAX_EDGES} edges, got {g.m}")
    if g.m == 0:
        return 0
    limit = g.max_degree + 1 if max_colors is None else max_colors
    for k in range(1, limit + 1):
        if exhaustive_coloring(g, k) is not None:
            return k
    return None


# ------------------------------------------------------ graph enumeration


def _invariant(n: int, edges: frozenset) -> tuple:
    adj = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    deg = [len(x) for x in adj]
    return tuple(sorted((deg[u], tuple(sorted(deg[w] for w in adj[u]))) for u in range(n)))


def connected_graphs(max_edges: int) -> Iterator[Graph]:
    """Every connected simple graph with 1..max_edges edges, once per isomorphism class.

    Built level by level: each class with ``m + 1`` edges arises from one with
    ``m`` edges by adding an edge between two existing vertices or to a new vertex.
    """
    import networkx as nx
    from networkx.algorithms.isomorphism import GraphMatcher

    level = [(2, frozenset({(0, 1)}))]
    m = 1
    while m <= max_edges and level:
        for n, edges in level:
            yield Graph(n, sorted(edges))
        if m == max_edges:
            return
        buckets: dict[tuple, list] = {}
        nxt = []
        for n, edges in level:
            cands = [(n, (a, b)) for a in range(n) for b in range(a + 1, n) if (a, b) not in edges]
            cands += [(n + 1, (a, n)) for a in range(n)]
            for n2, e in cands:
                new = edges | {e}
                key = (n2, _invariant(n2, new))
                h = nx.Graph(list(new))
                same = buckets.setdefault(key, [])
                if any(GraphMatcher(h, o).is_isomorphic() for o in same):
                    continue
                same.append(h)
                nxt.append((n2, new))
        level = nxt
        m += 1
