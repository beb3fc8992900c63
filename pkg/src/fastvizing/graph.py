"""Simple undirected graphs: construction, parsing, serialization and generators.

Vertices are dense 0-based integers. Edge ids are assigned in construction
order and never change, so colorings can be stored as flat per-edge arrays.
"""
from __future__ import annotations

import io
import itertools
from typing import IO, Iterable, Sequence

import numpy as np


class GraphError(ValueError):
    """Raised for malformed input or infeasible generator parameters."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SelfLoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class VertexRangeError(GraphError):
    pass


class Graph:
    """Immutable simple graph.

    ``eu[e], ev[e]`` are the endpoints of edge ``e`` (``eu[e] < ev[e]``) and
    ``adj[u]`` is a tuple of ``(neighbor, edge id)`` pairs.
    """

    __slots__ = ("n", "eu", "ev", "adj", "max_degree", "_index")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        eu: list[int] = []
        ev: list[int] = []
        index: dict[tuple[int, int], int] = {}
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for a, b in edges:
            a, b = int(a), int(b)
            if a == b:
                raise SelfLoopError(f"self-loop at vertex {a}")
            if not (0 <= a < n and 0 <= b < n):
                raise VertexRangeError(f"edge ({a}, {b}) outside vertex range [0, {n})")
            key = (a, b) if a < b else (b, a)
            if key in index:
                raise DuplicateEdgeError(f"duplicate edge {key}")
            e = len(eu)
            index[key] = e
            eu.append(key[0])
            ev.append(key[1])
            adj[a].append((b, e))
            adj[b].append((a, e))
        self.n = n
        self.eu = tuple(eu)
        self.ev = tuple(ev)
        self.adj = tuple(tuple(nb) for nb in adj)
        self.max_degree = max((len(nb) for nb in adj), default=0)
        self._index = index

    @property
    def m(self) -> int:
        return len(self.eu)

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def edges(self) -> list[tuple[int, int]]:
        return list(zip(self.eu, self.ev))

    def edge_id(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        try:
            return self._index[key]
        except KeyError:
            raise KeyError(f"({u}, {v}) is not an edge") from None

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._index

    def other(self, e: int, u: int) -> int:
        return self.eu[e] + self.ev[e] - u

    def induced(self, keep: Iterable[int]) -> list[int]:
        """Edge ids of the subgraph induced by ``keep``."""
        inside = bytearray(self.n)
        for u in keep:
            inside[u] = 1
        return [e for e in range(self.m) if inside[self.eu[e]] and inside[self.ev[e]]]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, max_degree={self.max_degree})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and set(self._index) == set(other._index)

    __hash__ = None  # type: ignore[assignment]


# ---------------------------------------------------------------- parsing


def _lines(source: str | bytes | IO) -> Iterable[str]:
    if isinstance(source, bytes):
        source = source.decode()
    if isinstance(source, str):
        source = io.StringIO(source)
    for raw in source:
        if isinstance(raw, bytes):
            raw = raw.decode()
        yield raw


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphError(f"expected an integer, got {token!r}", lineno) from None


def load_graph(source: str | bytes | IO, fmt: str = "edge-list", n: int | None = None) -> Graph:
    """Parse a graph from text.

    ``fmt`` is ``"edge-list"`` (``u v`` per line, 0-based, ``#`` comments) or
    ``"dimacs"`` (``p edge N M`` header, ``e u v`` lines, 1-based). For edge
    lists the vertex count is ``n`` if given, else one more than the largest id.
    """
    if fmt == "edge-list":
        return _load_edge_list(source, n)
    if fmt == "dimacs":
        return _load_dimacs(source)
    raise GraphError(f"unknown graph format {fmt!r}")


def _check_pair(a: int, b: int, n: int | None, lineno: int, seen: set) -> None:
    if a < 0 or b < 0 or (n is not None and (a >= n or b >= n)):
        raise VertexRangeError(f"vertex id out of range in edge ({a}, {b})", lineno)
    if a == b:
        raise SelfLoopError(f"self-loop at vertex {a}", lineno)
    key = (a, b) if a < b else (b, a)
    if key in seen:
        raise DuplicateEdgeError(f"duplicate edge {key}", lineno)
    seen.add(key)


def _load_edge_list(source, n: int | None) -> Graph:
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    top = -1
    for lineno, raw in enumerate(_lines(source), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"expected 'u v', got {line!r}", lineno)
        a, b = _int(parts[0], lineno), _int(parts[1], lineno)
        _check_pair(a, b, n, lineno, seen)
        top = max(top, a, b)
        edges.append((a, b))
    return Graph(top + 1 if n is None else n, edges)


def _load_dimacs(source) -> Graph:
    n = declared_m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(_lines(source), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            if n is not None:
                raise GraphError("second problem line", lineno)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise GraphError(f"expected 'p edge N M', got {raw.strip()!r}", lineno)
            n, declared_m = _int(parts[2], lineno), _int(parts[3], lineno)
        elif parts[0] == "e":
            if n is None:
                raise GraphError("edge line before problem line", lineno)
            if len(parts) != 3:
                raise GraphError(f"expected 'e u v', got {raw.strip()!r}", lineno)
            a, b = _int(parts[1], lineno) - 1, _int(parts[2], lineno) - 1
            _check_pair(a, b, n, lineno, seen)
            edges.append((a, b))
        else:
            raise GraphError(f"unrecognized line {raw.strip()!r}", lineno)
    if n is None:
        raise GraphError("missing problem line")
    if declared_m != len(edges):
        raise GraphError(f"header declares {declared_m} edges, found {len(edges)}")
    return Graph(n, edges)


def dump_graph(g: Graph, fmt: str = "edge-list") -> str:
    out = io.StringIO()
    if fmt == "edge-list":
        out.write(f"# n={g.n} m={g.m}\n")
        for a, b in zip(g.eu, g.ev):
            out.write(f"{a} {b}\n")
    elif fmt == "dimacs":
        out.write(f"p edge {g.n} {g.m}\n")
        for a, b in zip(g.eu, g.ev):
            out.write(f"e {a + 1} {b + 1}\n")
    else:
        raise GraphError(f"unknown graph format {fmt!r}")
    return out.getvalue()


# ------------------------------------------------------------- generators


def complete(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 0 or b < 0:
        raise GraphError("part sizes must be non-negative")
    return Graph(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("a simple cycle needs at least 3 vertices")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    return Graph(n, ((i, i + 1) for i in range(n - 1)))


def star(leaves: int) -> Graph:
    """K_{1,leaves} with center 0."""
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def gnm(n: int, m: int, seed: int = 0) -> Graph:
    """Uniform random graph with exactly ``m`` edges, edges sorted."""
    total = n * (n - 1) // 2
    if m < 0 or m > total:
        raise GraphError(f"gnm: m={m} not in [0, {total}]")
    rng = np.random.default_rng(seed)
    # sample the smaller of the edge set and its complement
    want = min(m, total - m)
    chosen: set[tuple[int, int]] = set()
    while len(chosen) < want:
        k = max(64, 2 * (want - len(chosen)))
        pairs = rng.integers(0, n, size=(k, 2))
        for a, b in pairs.tolist():
            if a == b:
                continue
            key = (a, b) if a < b else (b, a)
            chosen.add(key)
            if len(chosen) == want:
                break
    if want == m:
        edges = sorted(chosen)
    else:
        edges = [p for p in itertools.combinations(range(n), 2) if p not in chosen]
    return Graph(n, edges)


def d_regular(n: int, d: int, seed: int = 0) -> Graph:
    """Random d-regular graph (pairing model with restarts)."""
    if d < 0 or d >= n or (n * d) % 2:
        raise GraphError(f"d_regular: infeasible parameters n={n}, d={d}")
    import networkx as nx

    h = nx.random_regular_graph(d, n, seed=int(seed) % (2**32))
    return Graph(n, sorted(tuple(sorted(e)) for e in h.edges()))


MODELS = {
    "gnm": (gnm, ("n", "m")),
    "d_regular": (d_regular, ("n", "d")),
    "complete": (complete, ("n",)),
    "complete_bipartite": (complete_bipartite, ("a", "b")),
    "cycle": (cycle, ("n",)),
    "star": (star, ("leaves",)),
    "path": (path, ("n",)),
    "petersen": (petersen, ()),
}

_SEEDED = {"gnm", "d_regular"}


def generate(model: str, params: Sequence[int], seed: int = 0) -> Graph:
    try:
        fn, names = MODELS[model]
    except KeyError:
        raise GraphError(f"unknown model {model!r}; choose from {sorted(MODELS)}") from None
    if len(params) != len(names):
        raise GraphError(f"{model} takes {len(names)} parameter(s) {names}, got {len(params)}")
    if model in _SEEDED:
        return fn(*params, seed=seed)
    return fn(*params)
