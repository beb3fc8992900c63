"""Alternating paths, Vizing fans and (truncated) Vizing chains.

Every routine here works on a :class:`PartialColoring` in place. The chain
procedures first build a plan (fan + path) without touching the coloring and
then commit it through :meth:`PartialColoring.apply`, which checks that the
final state is proper.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .coloring import ColoringError, PartialColoring, lowest


class ChainError(ValueError):
    """Precondition violation or broken internal invariant in a chain routine."""


@dataclass
class AltPath:
    """An ``{x, y}``-alternating path oriented away from ``vertices[0]``."""

    colors: tuple[int, int]
    vertices: list[int]
    edges: list[int]
    truncated: bool = False

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]


def trace_alt_path(
    chi: PartialColoring, start: int, colors: tuple[int, int], cap: Optional[int] = None
) -> AltPath:
    """Follow the unique ``{x, y}``-path leaving ``start``.

    With a ``cap`` the walk stops after ``cap`` edges; ``truncated`` is set only
    if the path really continues past that point.
    """
    x, y = colors
    if x == y:
        raise ChainError("an alternating path needs two distinct colors")
    at = chi.at
    ex, ey = at[start][x], at[start][y]
    if ex >= 0 and ey >= 0:
        raise ChainError(f"vertex {start} has edges of both colors {x} and {y}")
    eu, ev = chi.g.eu, chi.g.ev
    vertices = [start]
    edges: list[int] = []
    limit = chi.g.m if cap is None else min(cap, chi.g.m)
    cur = start
    # first color to follow
    want = x if ex >= 0 else y
    e = ex if ex >= 0 else ey
    while e >= 0 and len(edges) < limit:
        cur = eu[e] + ev[e] - cur
        edges.append(e)
        vertices.append(cur)
        want = y if want == x else x
        e = at[cur][want]
    chi.work += len(edges)
    truncated = e >= 0
    if truncated and cap is None:
        raise ChainError("alternating walk did not terminate; coloring is corrupt")
    return AltPath((x, y), vertices, edges, truncated)


def flip_path(chi: PartialColoring, p: AltPath) -> int:
    """Swap the two colors along a maximal path; returns the number of recolors."""
    if p.truncated:
        raise ChainError("cannot flip a truncated path")
    x, y = p.colors
    col = chi.color_of
    return chi.apply({e: (y if col[e] == x else x) for e in p.edges})


# ------------------------------------------------------------------ fans


@dataclass
class Fan:
    """Vizing fan ``(v_0, c_0), ..., (v_k, c_k)`` around ``center``.

    ``primed_kind`` is ``"extends"`` when the fan closed on a color missing at
    the center (the coloring was extended by rotation), ``"cv_primed"`` when
    ``c_k`` equals the blocking color ``c_v`` and ``"other_primed"`` otherwise.
    """

    center: int
    vertices: list[int]
    colors: list[int]
    edges: list[int]
    primed_kind: str
    c_u: int
    c_v: int

    @property
    def primed_color(self) -> int:
        return self.colors[-1]

    @property
    def k(self) -> int:
        return len(self.vertices) - 1

    def first_index(self, c: int) -> int:
        return self.colors.index(c)


def _check_uncolored(chi: PartialColoring, u: int, v: int, c_u: int, c_v: int) -> int:
    g = chi.g
    try:
        e = g.edge_id(u, v)
    except KeyError:
        raise ChainError(f"({u}, {v}) is not an edge") from None
    if chi.color_of[e]:
        raise ChainError(f"edge ({u}, {v}) is already colored")
    if not chi.is_missing(u, c_u):
        raise ChainError(f"c_u={c_u} is not missing at {u}")
    if not chi.is_missing(v, c_v):
        raise ChainError(f"c_v={c_v} is not missing at {v}")
    return e


def _build_fan(chi: PartialColoring, u: int, v: int, c_u: int, c_v: int) -> Fan:
    """Construct the fan without changing ``chi``."""
    e0 = _check_uncolored(chi, u, v, c_u, c_v)
    miss, at, g = chi.miss, chi.at, chi.g
    bu = 1 << c_u
    if c_u == c_v:
        # common missing color: the one-element fan closes at once
        return Fan(u, [v], [c_u], [e0], "extends", c_u, c_v)
    if miss[v] & bu:
        c = c_u
    else:
        rest = miss[v] & ~(1 << c_v)
        if not rest:
            raise ChainError(f"vertex {v} has no missing color besides c_v")
        c = lowest(rest)
    vertices, colors, edges = [v], [c], [e0]
    seen = 1 << c
    mu = miss[u]
    limit = g.max_degree + 1
    while not (mu >> c) & 1:
        e = at[u][c]
        w = g.eu[e] + g.ev[e] - u
        mw = miss[w]
        c = c_u if mw & bu else lowest(mw)
        vertices.append(w)
        colors.append(c)
        edges.append(e)
        if (seen >> c) & 1:
            kind = "cv_primed" if c == c_v else "other_primed"
            chi.work += len(vertices)
            return Fan(u, vertices, colors, edges, kind, c_u, c_v)
        seen |= 1 << c
        if len(vertices) > limit:
            raise ChainError("fan grew beyond Δ+1 vertices")
    chi.work += len(vertices)
    return Fan(u, vertices, colors, edges, "extends", c_u, c_v)


def _rotation(fan: Fan, upto: int) -> dict[int, int]:
    """``χ(u, v_h) <- c_h`` for ``h <= upto``."""
    return {fan.edges[h]: fan.colors[h] for h in range(upto + 1)}


def vizing_fan(chi: PartialColoring, u: int, v: int, c_u: int, c_v: int) -> Fan:
    """Build the fan; if it closes on a color missing at ``u``, rotate and color ``(u, v)``."""
    fan = _build_fan(chi, u, v, c_u, c_v)
    if fan.primed_kind == "extends":
        chi.apply(_rotation(fan, fan.k))
    return fan


# ----------------------------------------------------------------- chains


@dataclass
class ChainPlan:
    fan: Fan
    path: Optional[AltPath] = None
    overlapping: bool = False
    # index of the fan vertex the path is anchored to: j (first occurrence of
    # c_k) for non-overlapping paths, i (first occurrence of c_v) otherwise
    anchor: int = 0
    c: int = 0


def plan_chain(
    chi: PartialColoring, u: int, v: int, c_u: int, c_v: int, cap: Optional[int] = None
) -> ChainPlan:
    """Fan and path that :func:`vizing_extend` would use, traced up to ``cap`` edges."""
    fan = _build_fan(chi, u, v, c_u, c_v)
    if fan.primed_kind == "extends":
        return ChainPlan(fan)
    ck = fan.primed_color
    if fan.primed_kind == "other_primed":
        j = fan.first_index(ck)
        rest = chi.miss[u] & ~(1 << c_u)
        if not rest:
            raise ChainError(f"vertex {u} has no missing color besides c_u")
        c = lowest(rest)
        path = trace_alt_path(chi, u, (c, ck), cap)
        return ChainPlan(fan, path, False, j, c)
    i = fan.first_index(c_v)
    path = trace_alt_path(chi, fan.vertices[i], (c_u, c_v), cap)
    return ChainPlan(fan, path, True, i, c_u)


def _full_changes(chi: PartialColoring, plan: ChainPlan) -> dict[int, int]:
    fan, path = plan.fan, plan.path
    assert path is not None and not path.truncated
    x, y = path.colors
    col = chi.color_of
    flips = {e: (y if col[e] == x else x) for e in path.edges}
    k = fan.k
    if not plan.overlapping:
        j = plan.anchor
        if path.length and path.end == fan.vertices[j]:
            changes = flips
            for h in range(k):
                changes[fan.edges[h]] = plan.c if h == j else fan.colors[h]
            changes[fan.edges[k]] = fan.colors[k]
        else:
            changes = _rotation(fan, j)
            changes.update(flips)
        return changes
    i = plan.anchor
    if path.length and path.end == fan.center:
        changes = flips
        for h in range(k):
            changes[fan.edges[h]] = fan.c_u if h == i else fan.colors[h]
        changes[fan.edges[k]] = fan.c_v
    else:
        changes = _rotation(fan, i - 1)
        changes[fan.edges[i]] = fan.c_u
        changes.update(flips)
    return changes


@dataclass
class Done:
    """The edge was colored."""

    recolors: int
    path_length: int = 0
    overlapping: Optional[bool] = None


@dataclass
class Shifted:
    """The chain was cut: ``(u, v)`` is the new uncolored edge."""

    u: int
    v: int
    c_u: int
    c_v: int
    recolors: int
    path_length: int
    overlapping: bool


def _commit(chi: PartialColoring, changes: dict[int, int]) -> int:
    try:
        return chi.apply(changes)
    except ColoringError as exc:  # pragma: no cover - signals a bug in the plan
        raise ChainError(f"chain produced an improper coloring: {exc}") from exc


def execute_full(chi: PartialColoring, plan: ChainPlan) -> Done:
    if plan.path is None:
        return Done(_commit(chi, _rotation(plan.fan, plan.fan.k)))
    if plan.path.truncated:
        raise ChainError("cannot complete a chain from a truncated path")
    n = _commit(chi, _full_changes(chi, plan))
    return Done(n, plan.path.length, plan.overlapping)


def vizing_extend(chi: PartialColoring, u: int, v: int, c_u: int, c_v: int) -> Done:
    """Color the uncolored edge ``(u, v)`` with one fan rotation and one path flip."""
    return execute_full(chi, plan_chain(chi, u, v, c_u, c_v))


def execute_truncated(chi: PartialColoring, plan: ChainPlan, t: int) -> Shifted:
    """Apply the fan prefix, flip the first ``t-1`` path edges and uncolor the ``t``-th."""
    fan, path = plan.fan, plan.path
    assert path is not None and path.length >= t
    if plan.overlapping:
        i = plan.anchor
        changes = _rotation(fan, i - 1)
        changes[fan.edges[i]] = fan.c_u
    else:
        changes = _rotation(fan, plan.anchor)
    x, y = path.colors
    col = chi.color_of
    for e in path.edges[: t - 1]:
        changes[e] = y if col[e] == x else x
    changes[path.edges[t - 1]] = 0
    n = _commit(chi, changes)
    u2, v2 = path.vertices[t - 1], path.vertices[t]
    tau = (1 << x) | (1 << y)
    mv = chi.miss[v2] & tau
    mu = chi.miss[u2] & tau
    if not mu or not mv:
        raise ChainError("truncation left an endpoint without a path color")
    c_v2 = lowest(mv)
    mu_pref = mu & ~(1 << c_v2)
    c_u2 = lowest(mu_pref) if mu_pref else lowest(mu)
    return Shifted(u2, v2, c_u2, c_v2, n, path.length, plan.overlapping)


def truncated_vizing(
    chi: PartialColoring, u: int, v: int, c_u: int, c_v: int, t: int
) -> Union[Done, Shifted]:
    """Run the chain but cut its path after ``t`` edges if it is longer than that."""
    if t < 1:
        raise ChainError("truncation point t must be >= 1")
    plan = plan_chain(chi, u, v, c_u, c_v, cap=t)
    if plan.path is None or not plan.path.truncated:
        return execute_full(chi, plan)
    return execute_truncated(chi, plan, t)


# ------------------------------------------------------------- enumeration


def maximal_paths(chi: PartialColoring, x: int, y: int) -> list[AltPath]:
    """All maximal ``{x, y}``-alternating paths with at least one edge.

    Alternating cycles are skipped since they have no endpoints.
    """
    g = chi.g
    seen = bytearray(g.m)
    out = []
    at = chi.at
    for s in range(g.n):
        ex, ey = at[s][x], at[s][y]
        if (ex >= 0) == (ey >= 0):
            continue
        e = ex if ex >= 0 else ey
        if seen[e]:
            continue
        p = trace_alt_path(chi, s, (x, y))
        for f in p.edges:
            seen[f] = 1
        out.append(p)
    return out
