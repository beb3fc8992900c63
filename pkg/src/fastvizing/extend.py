"""Single-edge extension by random truncation of long Vizing chains, and the
sequential baseline colorer."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .chains import Done, execute_full, execute_truncated, plan_chain, vizing_extend
from .coloring import PartialColoring, lowest
from .graph import Graph


def clog2(x: float) -> int:
    """``ceil(log2 x)``, at least 1."""
    return max(1, math.ceil(math.log2(x))) if x > 1 else 1


@dataclass
class ExtendConfig:
    ell: int
    L: int
    kappa_iters: int
    mode: str = "practical"
    seed: int = 0

    def __post_init__(self):
        if self.ell < 1 or self.L < 1 or self.kappa_iters < 1:
            raise ValueError(f"ell, L and kappa_iters must be >= 1: {self}")
        if self.mode not in ("paper", "practical"):
            raise ValueError(f"unknown mode {self.mode!r}")

    @classmethod
    def for_graph(cls, g: Graph, mode: str = "practical", **overrides) -> "ExtendConfig":
        n, delta = max(g.n, 2), max(g.max_degree, 1)
        lg = clog2(n)
        base = delta * delta + math.isqrt(delta * n - 1) + 1  # Δ² + ceil(sqrt(Δn))
        if mode == "paper":
            ell = 100 * lg
            cfg = dict(ell=ell, L=1000 * ell * ell * base, kappa_iters=(ell + 1) * 1600 * lg * lg)
        elif mode == "practical":
            ell = lg
            cfg = dict(ell=ell, L=min(4 * base, 2 * n), kappa_iters=50 * ell)
        else:
            raise ValueError(f"unknown mode {mode!r}")
        cfg.update({k: v for k, v in overrides.items() if v is not None})
        return cls(mode=mode, **cfg)


@dataclass
class ExtendStats:
    iterations: int = 0
    truncations: int = 0
    fallback_used: bool = False
    chain_lengths: list[int] = field(default_factory=list)
    max_iteration_recolors: int = 0


def initial_blocking(chi: PartialColoring, u: int, v: int) -> tuple[int, int]:
    """Lowest common missing color for both ends if there is one, else the lowest of each."""
    common = chi.miss[u] & chi.miss[v]
    if common:
        c = lowest(common)
        return c, c
    return lowest(chi.miss[u]), lowest(chi.miss[v])


def extend_coloring(
    chi: PartialColoring,
    u: int,
    v: int,
    cfg: ExtendConfig,
    rng: np.random.Generator,
    check=None,
) -> ExtendStats:
    """Color one more edge, starting from the uncolored edge ``(u, v)``.

    Long chains are cut at a random point, which moves the hole elsewhere;
    after ``cfg.kappa_iters`` cuts a plain Vizing chain finishes the job.
    ``check`` (optional) is called with ``chi`` after every iteration.
    """
    stats = ExtendStats()
    L = cfg.L
    cap = 2 * L + 2
    c_u, c_v = initial_blocking(chi, u, v)
    while stats.iterations < cfg.kappa_iters:
        stats.iterations += 1
        plan = plan_chain(chi, u, v, c_u, c_v, cap=cap)
        if plan.path is None or not plan.path.truncated:
            res = execute_full(chi, plan)
            stats.chain_lengths.append(res.path_length)
            stats.max_iteration_recolors = max(stats.max_iteration_recolors, res.recolors)
            if check:
                check(chi)
            return stats
        i = int(rng.integers(1, L + 1))
        res = execute_truncated(chi, plan, i + 1)
        stats.truncations += 1
        stats.chain_lengths.append(res.path_length)
        stats.max_iteration_recolors = max(stats.max_iteration_recolors, res.recolors)
        u, v, c_u, c_v = res.u, res.v, res.c_u, res.c_v
        if check:
            check(chi)
    stats.iterations += 1
    stats.fallback_used = True
    c_u, c_v = initial_blocking(chi, u, v)
    res = vizing_extend(chi, u, v, c_u, c_v)
    stats.chain_lengths.append(res.path_length)
    if check:
        check(chi)
    return stats


# ---------------------------------------------------------------- baseline


@dataclass
class BaselineStats:
    edges: int = 0
    direct: int = 0
    path_edges: int = 0
    longest_path: int = 0


def sequential_vizing(
    chi: PartialColoring,
    edges: Iterable[int],
    rng: Optional[np.random.Generator] = None,
    stats: Optional[BaselineStats] = None,
) -> BaselineStats:
    """Color the given uncolored edges one by one with plain Vizing chains.

    With ``rng`` the edges are processed in a random order.
    """
    stats = stats or BaselineStats()
    order = list(edges)
    if rng is not None and order:
        order = [order[i] for i in rng.permutation(len(order)).tolist()]
    eu, ev, miss, col = chi.g.eu, chi.g.ev, chi.miss, chi.color_of
    for e in order:
        if col[e]:
            continue
        u, v = eu[e], ev[e]
        common = miss[u] & miss[v]
        stats.edges += 1
        if common:
            chi._put(e, u, v, lowest(common))
            stats.direct += 1
            continue
        res = vizing_extend(chi, u, v, lowest(miss[u]), lowest(miss[v]))
        stats.path_edges += res.path_length
        stats.longest_path = max(stats.longest_path, res.path_length)
    return stats


def baseline_color(g: Graph, rng: np.random.Generator) -> tuple[PartialColoring, BaselineStats]:
    """Complete (Δ+1)-edge coloring by sequential Vizing chains in random edge order."""
    chi = PartialColoring(g)
    stats = sequential_vizing(chi, range(g.m), rng)
    return chi, stats
