"""Partial (Δ+1)-edge colorings with O(1) color queries, and an independent verifier.

Colors are ``1..k`` with ``k = Δ + 1``. Internally ``0`` marks an uncolored
edge; the public accessor :meth:`PartialColoring.color` returns ``None``.
Missing-color sets are Python ints used as bitsets (bit ``c`` set means color
``c`` is missing), which gives O(1) membership and cheap lowest-member picks.
"""
from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import IO, Iterable, Mapping, Sequence

import numpy as np

from .graph import Graph, GraphError


class ColoringError(ValueError):
    """An operation would break properness or referenced an invalid color."""


def lowest(mask: int) -> int:
    """Smallest color in a non-empty bitset."""
    return (mask & -mask).bit_length() - 1


def colors_of(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class PartialColoring:
    """Mutable edge coloring of ``g`` using the palette ``1..g.max_degree + 1``.

    Attributes are public for the hot loops in :mod:`chains` and :mod:`stars`:

    * ``color_of[e]``  color of edge ``e`` or 0
    * ``at[u][c]``     id of the edge at ``u`` with color ``c``, or -1
    * ``miss[u]``      bitset of colors missing at ``u``
    * ``udeg[u]``      number of uncolored edges at ``u``
    * ``uncolored``    number of uncolored edges
    * ``work``         count of color changes ever applied (cost accounting)
    """

    def __init__(self, g: Graph, palette: int | None = None):
        k = g.max_degree + 1 if palette is None else palette
        if k < g.max_degree + 1:
            raise ColoringError(f"palette {k} smaller than Δ+1 = {g.max_degree + 1}")
        self.g = g
        self.k = k
        self.full = ((1 << (k + 1)) - 1) ^ 1
        self.color_of = [0] * g.m
        self.at = [[-1] * (k + 1) for _ in range(g.n)]
        self.miss = [self.full] * g.n
        self.udeg = [len(nb) for nb in g.adj]
        self.uncolored = g.m
        self.work = 0

    # -- queries

    def color(self, e: int) -> int | None:
        c = self.color_of[e]
        return c or None

    def is_missing(self, u: int, c: int) -> bool:
        return bool((self.miss[u] >> c) & 1)

    def missing(self, u: int) -> list[int]:
        return colors_of(self.miss[u])

    def miss_count(self, u: int) -> int:
        return self.miss[u].bit_count()

    def pick_missing(self, u: int, exclude: Iterable[int] = ()) -> int | None:
        """Lowest missing color at ``u`` outside ``exclude``."""
        mask = self.miss[u]
        for c in exclude:
            mask &= ~(1 << c)
        return lowest(mask) if mask else None

    def edge_with(self, u: int, c: int) -> int | None:
        e = self.at[u][c]
        return None if e < 0 else e

    def neighbor_with(self, u: int, c: int) -> int | None:
        e = self.at[u][c]
        return None if e < 0 else self.g.eu[e] + self.g.ev[e] - u

    def uncolored_edges(self) -> list[int]:
        return [e for e, c in enumerate(self.color_of) if not c]

    def colors_used(self) -> int:
        return len({c for c in self.color_of if c})

    # -- mutation

    def set_color(self, e: int, c: int) -> None:
        """Color edge ``e`` with ``c``; an already-colored edge is recolored."""
        if not 1 <= c <= self.k:
            raise ColoringError(f"color {c} outside palette 1..{self.k}")
        if self.color_of[e]:
            self.uncolor(e)
        u, v = self.g.eu[e], self.g.ev[e]
        if not (self.miss[u] >> c) & 1 or not (self.miss[v] >> c) & 1:
            raise ColoringError(f"color {c} already used at an endpoint of edge ({u}, {v})")
        self._put(e, u, v, c)

    def uncolor(self, e: int) -> None:
        c = self.color_of[e]
        if not c:
            raise ColoringError(f"edge {e} is already uncolored")
        self._take(e, self.g.eu[e], self.g.ev[e], c)

    def _put(self, e: int, u: int, v: int, c: int) -> None:
        bit = 1 << c
        self.color_of[e] = c
        self.at[u][c] = e
        self.at[v][c] = e
        self.miss[u] ^= bit
        self.miss[v] ^= bit
        self.udeg[u] -= 1
        self.udeg[v] -= 1
        self.uncolored -= 1
        self.work += 1

    def _take(self, e: int, u: int, v: int, c: int) -> None:
        bit = 1 << c
        self.color_of[e] = 0
        self.at[u][c] = -1
        self.at[v][c] = -1
        self.miss[u] |= bit
        self.miss[v] |= bit
        self.udeg[u] += 1
        self.udeg[v] += 1
        self.uncolored += 1
        self.work += 1

    def apply(self, changes: Mapping[int, int]) -> int:
        """Apply ``{edge: new color}`` atomically (0 uncolors); return #edges changed.

        All affected edges are uncolored first, so intermediate orderings do
        not matter; only the final state has to be proper.
        """
        eu, ev, col = self.g.eu, self.g.ev, self.color_of
        todo = [(e, c) for e, c in changes.items() if col[e] != c]
        for e, _ in todo:
            if col[e]:
                self._take(e, eu[e], ev[e], col[e])
        miss = self.miss
        for e, c in todo:
            if c:
                u, v = eu[e], ev[e]
                if not (miss[u] >> c) & 1 & (miss[v] >> c):
                    raise ColoringError(
                        f"recoloring makes color {c} clash at edge ({u}, {v})"
                    )
                self._put(e, u, v, c)
        return len(todo)

    # -- bookkeeping helpers

    def copy(self) -> "PartialColoring":
        other = PartialColoring.__new__(PartialColoring)
        other.g, other.k, other.full = self.g, self.k, self.full
        other.color_of = list(self.color_of)
        other.at = [list(row) for row in self.at]
        other.miss = list(self.miss)
        other.udeg = list(self.udeg)
        other.uncolored = self.uncolored
        other.work = self.work
        return other

    def snapshot(self) -> tuple[int, ...]:
        return tuple(self.color_of)

    def recompute_missing(self, u: int) -> int:
        """``miss[u]`` rebuilt from ``color_of`` alone (differential check)."""
        mask = self.full
        for _, e in self.g.adj[u]:
            c = self.color_of[e]
            if c:
                mask &= ~(1 << c)
        return mask

    def check_consistency(self) -> None:
        """Raise if the maintained indices disagree with ``color_of``."""
        g = self.g
        for u in range(g.n):
            if self.miss[u] != self.recompute_missing(u):
                raise ColoringError(f"miss[{u}] out of date")
            row = self.at[u]
            for c in range(1, self.k + 1):
                e = row[c]
                if e >= 0 and (self.color_of[e] != c or u not in (g.eu[e], g.ev[e])):
                    raise ColoringError(f"at[{u}][{c}] out of date")
            if self.udeg[u] != sum(1 for _, e in g.adj[u] if not self.color_of[e]):
                raise ColoringError(f"udeg[{u}] out of date")
        if self.uncolored != self.color_of.count(0):
            raise ColoringError("uncolored count out of date")

    @classmethod
    def from_colors(cls, g: Graph, colors: Sequence[int | None]) -> "PartialColoring":
        chi = cls(g)
        for e, c in enumerate(colors):
            if c:
                chi.set_color(e, c)
        return chi


# --------------------------------------------------------------- verifier


@dataclass
class VerifyReport:
    proper: bool
    colors_used: int
    uncolored: int
    palette: int
    violations: list[str] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return self.proper and self.uncolored == 0


def verify(g: Graph, coloring: PartialColoring | Sequence[int | None]) -> VerifyReport:
    """Check properness from the raw per-edge colors; never raises.

    Independent of the indices kept by :class:`PartialColoring`.
    """
    colors = coloring.color_of if isinstance(coloring, PartialColoring) else coloring
    k = g.max_degree + 1
    violations: list[str] = []
    if len(colors) != g.m:
        return VerifyReport(False, 0, g.m, k, [f"expected {g.m} edge colors, got {len(colors)}"])
    col = np.array([c or 0 for c in colors], dtype=np.int64)
    uncolored = int((col == 0).sum())
    bad = np.flatnonzero((col < 0) | (col > k))
    for e in bad[:20].tolist():
        violations.append(f"edge {e} ({g.eu[e]}, {g.ev[e]}) has color {col[e]} outside 1..{k}")
    colored = np.flatnonzero(col > 0)
    if colored.size:
        ends = np.concatenate([np.asarray(g.eu)[colored], np.asarray(g.ev)[colored]])
        cc = np.concatenate([col[colored], col[colored]])
        keys = ends * (int(cc.max()) + 1) + cc
        uniq, counts = np.unique(keys, return_counts=True)
        clash = uniq[counts > 1]
        width = int(cc.max()) + 1
        for key in clash[:20].tolist():
            u, c = divmod(key, width)
            violations.append(f"vertex {u} has several edges colored {c}")
        if clash.size > 20 or bad.size > 20:
            violations.append("... further violations omitted")
        used = int(np.unique(col[colored]).size)
    else:
        used = 0
    return VerifyReport(not violations, used, uncolored, k, violations)


# ------------------------------------------------------------- coloring I/O


def dump_coloring(g: Graph, coloring: PartialColoring | Sequence[int | None]) -> str:
    """``u v c`` per edge in edge-id order; ``c = 0`` marks an uncolored edge."""
    colors = coloring.color_of if isinstance(coloring, PartialColoring) else coloring
    out = io.StringIO()
    for a, b, c in zip(g.eu, g.ev, colors):
        out.write(f"{a} {b} {c or 0}\n")
    return out.getvalue()


def load_coloring(g: Graph, source: str | IO) -> list[int]:
    """Parse ``u v c`` lines into a per-edge color list (0 for absent/uncolored)."""
    if isinstance(source, str):
        source = io.StringIO(source)
    colors = [0] * g.m
    seen = set()
    for lineno, raw in enumerate(source, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise GraphError(f"expected 'u v c', got {line!r}", lineno)
        try:
            a, b, c = (int(p) for p in parts)
        except ValueError:
            raise GraphError(f"non-integer field in {line!r}", lineno) from None
        if not (0 <= a < g.n and 0 <= b < g.n) or not g.has_edge(a, b):
            raise GraphError(f"({a}, {b}) is not an edge of the graph", lineno)
        e = g.edge_id(a, b)
        if e in seen:
            raise GraphError(f"edge ({a}, {b}) listed twice", lineno)
        seen.add(e)
        if c < 0:
            raise GraphError(f"negative color {c}", lineno)
        colors[e] = c
    return colors
