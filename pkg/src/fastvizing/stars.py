"""Extending a partial coloring to many uncolored edges around a vertex set at once.

:func:`color_light_stars` works on vertices that all miss at least ``d``
colors. Each uncolored edge ``v -> u`` at such a vertex carries a tentative
color ``clr`` that is missing at ``v``; a random edge is drawn and, depending
on its class (ready, social, independent, lonely), it is colored directly,
via a short alternating path, via a short Vizing chain, or paired with
another lonely edge so that both become social.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .chains import trace_alt_path
from .coloring import ColoringError, PartialColoring, colors_of, lowest
from .extend import clog2

READY, SOCIAL, INDEPENDENT, LONELY = "ready", "social", "independent", "lonely"

SAFETY_FACTOR = 64


class StarError(RuntimeError):
    """Broken precondition or internal invariant in the star engine."""


@dataclass
class PseudoForest:
    """``F(u)``: arc ``z -> w`` whenever ``χ(u, w) = c[z]``; out-degree at most one."""

    center: int
    nodes: list[int]
    nxt: dict[int, int]
    comp: dict[int, int]

    def component(self, w: int) -> list[int]:
        r = self.comp[w]
        return [z for z in self.nodes if self.comp[z] == r]


class StarState:
    """Working state for one :func:`color_light_stars` call."""

    def __init__(self, chi: PartialColoring, ustar: Iterable[int], d: int, length_cap: Optional[int] = None):
        g = chi.g
        self.chi, self.g, self.d = chi, g, d
        self.in_w = bytearray(g.n)
        for u in ustar:
            self.in_w[u] = 1
        self.w_size = sum(self.in_w)
        self.s_list: list[int] = []
        self.s_pos: dict[int, int] = {}
        self.head: dict[int, int] = {}
        self.clr: dict[int, int] = {}
        self.out: list[dict[int, int]] = [dict() for _ in range(g.n)]
        self.clrmask = [0] * g.n
        self.lst: list[dict[int, set]] = [dict() for _ in range(g.n)]
        self.c = [lowest(m) if m else 0 for m in chi.miss]
        eu, ev, col, in_w = g.eu, g.ev, chi.color_of, self.in_w
        for e in range(g.m):
            if col[e]:
                continue
            a, b = eu[e], ev[e]
            if in_w[b]:
                head = b  # b > a, so this also settles the both-in-W tie
            elif in_w[a]:
                head = a
            else:
                continue
            tail = a + b - head
            free = chi.miss[tail] & ~self.clrmask[tail] & ~(1 << self.c[tail])
            self._add(e, head, lowest(free))
        self.lam = len(self.s_list)
        if length_cap is None:
            length_cap = max(1, math.ceil(200 * g.max_degree * g.m / (d * max(self.lam, 1))))
        self.L = length_cap
        # colored-edge counts at terminals, at start and when they leave W
        self.colored_init = {u: g.degree(u) - chi.udeg[u] for u in range(g.n) if self.in_w[u]}
        self.colored_at_removal: dict[int, int] = {}

    # -- S bookkeeping

    def _add(self, e: int, head: int, x: int) -> None:
        tail = self.g.eu[e] + self.g.ev[e] - head
        if e in self.s_pos:
            raise StarError(f"edge {e} already in S")
        if not (self.chi.miss[tail] >> x) & 1 or (self.clrmask[tail] >> x) & 1:
            raise StarError(f"tentative color {x} not available at {tail}")
        self.s_pos[e] = len(self.s_list)
        self.s_list.append(e)
        self.head[e] = head
        self.clr[e] = x
        self.out[tail][x] = e
        self.clrmask[tail] |= 1 << x
        self.lst[head].setdefault(x, set()).add(e)

    def _drop_clr(self, e: int) -> int:
        x = self.clr.pop(e)
        head = self.head[e]
        tail = self.g.eu[e] + self.g.ev[e] - head
        del self.out[tail][x]
        self.clrmask[tail] &= ~(1 << x)
        bucket = self.lst[head][x]
        bucket.discard(e)
        if not bucket:
            del self.lst[head][x]
        return tail

    def _set_clr(self, e: int, x: int) -> None:
        head = self.head[e]
        tail = self.g.eu[e] + self.g.ev[e] - head
        self.clr[e] = x
        self.out[tail][x] = e
        self.clrmask[tail] |= 1 << x
        self.lst[head].setdefault(x, set()).add(e)

    def _remove(self, e: int) -> None:
        self._drop_clr(e)
        i = self.s_pos.pop(e)
        last = self.s_list.pop()
        if last != e:
            self.s_list[i] = last
            self.s_pos[last] = i
        del self.head[e]

    @property
    def size(self) -> int:
        return len(self.s_list)

    def tail(self, e: int) -> int:
        return self.g.eu[e] + self.g.ev[e] - self.head[e]

    # -- maintenance

    def repair(self, v: int) -> None:
        """Restore ``c[v]`` and the tentative colors at tail ``v`` after ``miss[v]`` changed."""
        miss = self.chi.miss[v]
        stale = [e for x, e in self.out[v].items() if not (miss >> x) & 1]
        for e in stale:
            self._drop_clr(e)
        mask = self.clrmask[v]
        cv = self.c[v]
        if not (miss >> cv) & 1 or (mask >> cv) & 1:
            avail = miss & ~mask
            if not avail:
                raise StarError(f"no reserved color left at {v}")
            cv = self.c[v] = lowest(avail)
        for e in sorted(stale):
            avail = miss & ~self.clrmask[v] & ~(1 << cv)
            if not avail:
                raise StarError(f"no tentative color left at {v}")
            self._set_clr(e, lowest(avail))

    def after_change(self, vertices: Iterable[int]) -> None:
        """Repair touched vertices and retire terminals whose miss set got small."""
        touched = set(vertices)
        for v in sorted(touched):
            self.repair(v)
        half = self.d / 2
        miss = self.chi.miss
        for u in sorted(touched):
            if self.in_w[u] and miss[u].bit_count() < half:
                self.in_w[u] = 0
                self.w_size -= 1
                self.colored_at_removal[u] = self.g.degree(u) - self.chi.udeg[u]
                for x in list(self.lst[u]):
                    for e in sorted(self.lst[u].get(x, ())):
                        self._remove(e)

    # -- classification

    def forest(self, u: int) -> PseudoForest:
        chi, c = self.chi, self.c
        col, at, g = chi.color_of, chi.at[u], self.g
        nodes = [w for w, e in g.adj[u] if col[e]]
        nxt: dict[int, int] = {}
        for z in nodes:
            e = at[c[z]]
            if e >= 0:
                nxt[z] = g.eu[e] + g.ev[e] - u
        parent = {z: z for z in nodes}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for z, w in nxt.items():
            rz, rw = find(z), find(w)
            if rz != rw:
                parent[max(rz, rw)] = min(rz, rw)
        comp = {z: find(z) for z in nodes}
        return PseudoForest(u, nodes, nxt, comp)

    def arc(self, u: int, z: int) -> Optional[int]:
        """Out-neighbor of ``z`` in ``F(u)``, if any."""
        e = self.chi.at[u][self.c[z]]
        return None if e < 0 else self.g.eu[e] + self.g.ev[e] - u

    def _root(self, u: int, z: int, memo: dict) -> int:
        """Canonical label of the weak component of ``z`` in ``F(u)``.

        Following out-arcs from any vertex ends at a sink or on the unique
        cycle of the component; the label is the sink or the smallest cycle vertex.
        """
        walk = []
        pos: dict[int, int] = {}
        a: Optional[int] = z
        while a is not None and a not in memo:
            if a in pos:
                cyc = walk[pos[a]:]
                label = min(cyc)
                break
            pos[a] = len(walk)
            walk.append(a)
            a = self.arc(u, a)
        else:
            label = walk[-1] if a is None else memo[a]
        for b in walk:
            memo[b] = label
        return label

    def classify(self, e: int, forest: Optional[PseudoForest] = None):
        """Class of ``e`` plus, for lonely edges, the partner vertex ``w'``."""
        if e not in self.s_pos:
            raise StarError(f"edge {e} is not in S")
        u, y = self.head[e], self.clr[e]
        chi = self.chi
        mu = chi.miss[u]
        if (mu >> y) & 1:
            return READY, None
        lst = self.lst[u]
        if len(lst[y]) > 1:
            return SOCIAL, None
        at, g = chi.at[u], self.g
        w = g.eu[at[y]] + g.ev[at[y]] - u
        cands = []
        for x, bucket in lst.items():
            if x != y and len(bucket) == 1 and not (mu >> x) & 1:
                f = at[x]
                cands.append(g.eu[f] + g.ev[f] - u)
        if not cands:
            return INDEPENDENT, None
        if forest is not None:
            r = forest.comp[w]
            partners = [z for z in cands if forest.comp[z] == r]
        else:
            memo: dict[int, int] = {}
            r = self._root(u, w, memo)
            partners = [z for z in cands if self._root(u, z, memo) == r]
        if not partners:
            return INDEPENDENT, None
        return LONELY, min(partners)

    def counts(self) -> dict[str, int]:
        out = {READY: 0, SOCIAL: 0, INDEPENDENT: 0, LONELY: 0}
        forests: dict[int, PseudoForest] = {}
        for e in self.s_list:
            u = self.head[e]
            if u not in forests:
                forests[u] = self.forest(u)
            out[self.classify(e, forests[u])[0]] += 1
        return out

    def check_state(self) -> None:
        """Recompute every maintained structure from scratch and compare."""
        chi, g = self.chi, self.g
        for e in self.s_list:
            if chi.color_of[e]:
                raise StarError(f"S contains colored edge {e}")
            u = self.head[e]
            if not self.in_w[u]:
                raise StarError(f"S edge {e} points at {u}, which left W")
            v = self.tail(e)
            x = self.clr[e]
            if not (chi.miss[v] >> x) & 1:
                raise StarError(f"clr of {e} not missing at tail {v}")
            if x == self.c[v]:
                raise StarError(f"clr of {e} equals reserved color of {v}")
            if self.out[v].get(x) != e:
                raise StarError(f"out index wrong for {e}")
            if e not in self.lst[u].get(x, ()):
                raise StarError(f"lst index wrong for {e}")
        for v in range(g.n):
            if self.out[v]:
                mask = 0
                for x in self.out[v]:
                    mask |= 1 << x
                if mask != self.clrmask[v]:
                    raise StarError(f"clrmask[{v}] out of date")
                if not (chi.miss[v] >> self.c[v]) & 1:
                    raise StarError(f"c[{v}] not missing")
            for x, bucket in self.lst[v].items():
                for e in bucket:
                    if self.clr.get(e) != x or self.head.get(e) != v:
                        raise StarError(f"lst[{v}][{x}] holds stale edge {e}")
            if self.in_w[v] and chi.miss[v].bit_count() < self.d / 2:
                raise StarError(f"terminal {v} misses fewer than d/2 colors")


# ------------------------------------------------------------- the 4 steps


def vizing_recap_extend(
    chi: PartialColoring, c: list[int], u: int, v: int, z: int, x: int, cap: Optional[int]
) -> Optional[dict[int, int]]:
    """Vizing chain for uncolored ``(u, v)`` with reserved colors ``c``.

    ``v`` contributes ``z``, every other fan vertex ``w`` contributes ``c[w]``
    and ``u`` contributes ``x``. Returns the recoloring, or ``None`` when the
    alternating path is longer than ``cap``.
    """
    g = chi.g
    at, miss = chi.at[u], chi.miss[u]
    e0 = g.edge_id(u, v)
    verts, edges = [v], [e0]
    index_of_color: dict[int, int] = {}
    nxt_color = z
    while True:
        e = at[nxt_color]
        w = g.eu[e] + g.ev[e] - u
        index_of_color[nxt_color] = len(verts)
        verts.append(w)
        edges.append(e)
        nxt_color = c[w]
        if (miss >> nxt_color) & 1 or nxt_color in index_of_color:
            break
        if len(verts) > g.max_degree + 1:
            raise StarError("recap fan did not close")
    k = len(verts) - 1
    col = chi.color_of
    changes = {edges[i]: col[edges[i + 1]] for i in range(k)}
    if (miss >> nxt_color) & 1:
        changes[edges[k]] = nxt_color
        return changes
    j = index_of_color[nxt_color]
    y = nxt_color
    p = trace_alt_path(chi, u, (x, y), cap)
    if p.truncated:
        return None
    flips = {f: (y if col[f] == x else x) for f in p.edges}
    if p.end != verts[j - 1]:
        out = {edges[i]: col[edges[i + 1]] for i in range(j)}
        out.update(flips)
        out[edges[j]] = x
        return out
    # path ends at v_{j-1}: rotate the whole fan with post-flip colors
    post = dict(flips)
    out = dict(flips)
    for i in range(k):
        f = edges[i + 1]
        out[edges[i]] = post.get(f, col[f])
    out[edges[k]] = y
    return out


@dataclass
class LightStarsResult:
    lam: int
    colored: int
    iterations: int
    exit: str  # "threshold" or "cap"
    outcomes: dict[str, int] = field(default_factory=dict)
    removed_terminals: int = 0
    final_size: int = 0


def sample_color(mask: int, k: int, rng: np.random.Generator) -> int:
    """Uniform member of a non-empty color bitset."""
    # rejection first; the fallback pick is uniform as well, so the mix is exact
    draws = rng.integers(1, k + 1, size=8).tolist()
    for c in draws:
        if (mask >> c) & 1:
            return c
    cs = colors_of(mask)
    return cs[int(rng.integers(len(cs)))]


def star_extension_iteration(state: StarState, rng: np.random.Generator) -> str:
    """One sampled extension attempt; returns ``"colored"``, ``"paired"`` or ``"failed"``."""
    if not state.s_list:
        raise StarError("S is empty")
    chi, g = state.chi, state.g
    e = state.s_list[int(rng.integers(len(state.s_list)))]
    u = state.head[e]
    v = g.eu[e] + g.ev[e] - u
    x = sample_color(chi.miss[u], chi.k, rng)
    y = state.clr[e]
    kind, partner = state.classify(e)

    if kind == READY:
        state._remove(e)
        chi.apply({e: y})
        state.after_change((u, v))
        return "colored"

    if kind == SOCIAL:
        p = trace_alt_path(chi, v, (x, y), state.L)
        if p.truncated or (p.length and p.end == u):
            return "failed"
        changes = {f: (y if chi.color_of[f] == x else x) for f in p.edges}
        changes[e] = x
        state._remove(e)
        chi.apply(changes)
        state.after_change(p.vertices + [u])
        return "colored"

    if kind == INDEPENDENT:
        changes = vizing_recap_extend(chi, state.c, u, v, y, x, state.L)
        if changes is None:
            return "failed"
        state._remove(e)
        chi.apply(changes)
        touched = {u}
        for f in changes:
            touched.add(g.eu[f])
            touched.add(g.ev[f])
        state.after_change(touched)
        return "colored"

    return _pair_lonely(state, e, u, v, partner)


def _root_walk(state: StarState, u: int, start: int) -> list[int]:
    """Out-arc walk from ``start`` until a sink, or until the next step would close a cycle.

    Dropping that closing arc turns the component into a tree whose arcs
    point from children to parents; the walk is then the path to its root.
    """
    seen = {start}
    walk = [start]
    b = state.arc(u, start)
    while b is not None and b not in seen:
        seen.add(b)
        walk.append(b)
        b = state.arc(u, b)
    return walk


def _pair_lonely(state: StarState, e: int, u: int, v: int, w2: int) -> str:
    """Shift colors along both tree paths up to their meeting point ``t``.

    Both edges just below ``t`` end up uncolored and replace ``e`` and its
    partner in ``S``, with the shared tentative color ``χ(u, t)``.
    """
    chi, g = state.chi, state.g
    col = chi.color_of
    w = chi.neighbor_with(u, state.clr[e])
    wpath = _root_walk(state, u, w)
    on_w = {a: i for i, a in enumerate(wpath)}
    # the w path covers the sink (or the whole cycle), so the partner's walk meets it
    w2path = [w2]
    while w2path[-1] not in on_w:
        nxt = state.arc(u, w2path[-1])
        if nxt is None or len(w2path) > g.max_degree:
            raise StarError("partner walk never met the w path")
        w2path.append(nxt)
    t = w2path[-1]
    wpath = wpath[: on_w[t] + 1]
    (ep,) = tuple(state.lst[u][col[g.edge_id(u, w2)]])
    vp = g.eu[ep] + g.ev[ep] - u
    t_color = col[g.edge_id(u, t)]

    changes: dict[int, int] = {}
    new_edges = []
    for first, branch in ((v, wpath), (vp, w2path)):
        ids = [g.edge_id(u, a) for a in [first] + branch]
        for i in range(len(ids) - 2):
            changes[ids[i]] = col[ids[i + 1]]
        if col[ids[-2]]:
            changes[ids[-2]] = 0
        new_edges.append(ids[-2])

    state._remove(e)
    state._remove(ep)
    chi.apply(changes)
    for new in new_edges:
        state._add(new, u, t_color)
    state.after_change({u, v, vp, *wpath, *w2path})
    return "paired"


def color_light_stars(
    chi: PartialColoring,
    ustar: Iterable[int],
    d: int,
    rng: np.random.Generator,
    length_cap: Optional[int] = None,
    max_iterations: Optional[int] = None,
    check: bool = False,
) -> LightStarsResult:
    """Color at least a constant fraction of the uncolored edges at ``ustar``.

    Every vertex of ``ustar`` must miss at least ``d`` colors. Stops when
    fewer than ``3λ/4`` of the initial ``λ`` edges remain in play, or after
    ``64 λ log n`` iterations.
    """
    ustar = list(ustar)
    for u in ustar:
        if chi.miss[u].bit_count() < d:
            raise StarError(f"vertex {u} misses fewer than d={d} colors")
    state = StarState(chi, ustar, d, length_cap)
    lam = state.lam
    res = LightStarsResult(lam, 0, 0, "threshold", {"colored": 0, "paired": 0, "failed": 0})
    if lam == 0:
        return res
    cap = max_iterations or SAFETY_FACTOR * lam * clog2(max(chi.g.n, 2))
    start = chi.uncolored
    w0 = state.w_size
    while 4 * state.size >= 3 * lam:
        if res.iterations >= cap:
            res.exit = "cap"
            break
        res.iterations += 1
        out = star_extension_iteration(state, rng)
        res.outcomes[out] += 1
        if check:
            state.check_state()
    res.colored = start - chi.uncolored
    res.removed_terminals = w0 - state.w_size
    res.final_size = state.size
    return res


@dataclass
class HeavyStarsResult:
    lam: int
    colored: int
    rounds: list[LightStarsResult] = field(default_factory=list)
    buckets: list[int] = field(default_factory=list)


def choose_bucket(degrees: dict[int, int]) -> tuple[int, list[int]]:
    """Smallest ``p`` maximizing the sum of squared degrees in ``[2^p, 2^(p+1))``."""
    score: dict[int, int] = {}
    members: dict[int, list[int]] = {}
    for u, dg in degrees.items():
        if dg <= 0:
            continue
        p = dg.bit_length() - 1
        score[p] = score.get(p, 0) + dg * dg
        members.setdefault(p, []).append(u)
    if not score:
        raise StarError("no uncolored edges at the given vertices")
    best = max(score.values())
    p = min(q for q, s in score.items() if s == best)
    return p, sorted(members[p])


def color_heavy_stars(
    chi: PartialColoring,
    ustar: Iterable[int],
    rng: np.random.Generator,
    max_rounds: Optional[int] = None,
    check: bool = False,
) -> HeavyStarsResult:
    """Repeat light-star coloring on the heaviest degree bucket until half of ``λ`` is colored."""
    ustar = sorted(set(ustar))
    g = chi.g
    col = chi.color_of
    incident = {e for u in ustar for _, e in g.adj[u] if not col[e]}
    lam = len(incident)
    res = HeavyStarsResult(lam, 0)
    if lam == 0:
        return res
    rounds = max_rounds or 8 * clog2(max(g.n, 2))
    start = chi.uncolored
    while 2 * (start - chi.uncolored) < lam and len(res.rounds) < rounds:
        degrees = {u: chi.udeg[u] for u in ustar}
        if not any(degrees.values()):
            break
        p, members = choose_bucket(degrees)
        res.buckets.append(p)
        res.rounds.append(color_light_stars(chi, members, 1 << p, rng, check=check))
    res.colored = start - chi.uncolored
    return res
