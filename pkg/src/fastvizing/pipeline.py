"""End-to-end coloring: star extraction, base coloring, star coloring, per-edge extension."""
from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from . import rng as rngmod
from .coloring import PartialColoring, verify
from .extend import ExtendConfig, baseline_color, clog2, extend_coloring, sequential_vizing
from .graph import Graph
from .stars import color_heavy_stars, color_light_stars

STATS_SCHEMA = 1

BaseColorer = Callable[[PartialColoring, list, np.random.Generator], object]


def _sequential(chi: PartialColoring, edges: list, rng: np.random.Generator):
    return sequential_vizing(chi, edges, rng)


BASE_COLORERS: dict[str, BaseColorer] = {"sequential-vizing": _sequential}


@dataclass
class PipelineConfig:
    kappa: float
    slack: int
    retries: int
    threshold: float
    extend: ExtendConfig
    mode: str = "practical"
    seed: int = 0
    base_colorer: Union[str, BaseColorer] = "sequential-vizing"
    light_rounds: int = 0
    heavy_rounds: int = 0
    timing: bool = False

    def __post_init__(self):
        if self.kappa <= 0 or self.slack < 1 or self.retries < 1:
            raise ValueError("kappa must be positive and slack, retries at least 1")

    @classmethod
    def for_graph(
        cls,
        g: Graph,
        mode: str = "practical",
        seed: int = 0,
        *,
        ell: Optional[int] = None,
        cap_l: Optional[int] = None,
        kappa_iters: Optional[int] = None,
        threshold: Optional[float] = None,
        **overrides,
    ) -> "PipelineConfig":
        n = max(g.n, 2)
        lg = clog2(n)
        ext = ExtendConfig.for_graph(g, mode, ell=ell, L=cap_l, kappa_iters=kappa_iters)
        if mode == "paper":
            kappa = 1e4
            params = dict(
                kappa=kappa, slack=300 * lg, retries=10 * lg, threshold=kappa * n**0.25 * lg
            )
        elif mode == "practical":
            kappa = 2.0
            params = dict(
                kappa=kappa, slack=max(1, math.ceil(kappa * lg / 4)), retries=10 * lg,
                threshold=4 * n**0.25,
            )
        else:
            raise ValueError(f"unknown mode {mode!r}")
        if threshold is not None:
            params["threshold"] = threshold
        params.update(overrides)
        params.setdefault("light_rounds", 8 * lg)
        params.setdefault("heavy_rounds", 8 * lg)
        return cls(extend=ext, mode=mode, seed=seed, **params)


# ------------------------------------------------------------ extraction


@dataclass
class GoodSetReport:
    ok: bool
    failed: list[str]
    max_degree_outside: int
    u_hi: int
    lambda_init: int
    bound_i: float
    bound_ii: float
    bound_iii: float


def high_vertices(g: Graph) -> list[int]:
    half = g.max_degree / 2
    return [u for u in range(g.n) if len(g.adj[u]) > half]


def check_good_set(g: Graph, U, kappa: float, slack: int) -> GoodSetReport:
    """Evaluate the three good-set conditions for ``U`` exactly."""
    inside = bytearray(g.n)
    for u in U:
        inside[u] = 1
    lg = clog2(max(g.n, 2))
    delta = g.max_degree
    deg_out = 0
    for u in range(g.n):
        if not inside[u]:
            k = sum(1 for w, _ in g.adj[u] if not inside[w])
            if k > deg_out:
                deg_out = k
    half = delta / 2
    n_hi = sum(1 for u in range(g.n) if len(g.adj[u]) > half)
    u_hi = sum(1 for u in range(g.n) if inside[u] and len(g.adj[u]) > half)
    lam = sum(len(g.adj[u]) for u in range(g.n) if inside[u])
    d = max(delta, 1)
    b1 = delta - slack
    b2 = n_hi / d * 1.5 * kappa * lg
    b3 = g.m / d * 10 * kappa * lg
    failed = []
    if deg_out > b1:
        failed.append("I")
    if u_hi > b2:
        failed.append("II")
    if lam > b3:
        failed.append("III")
    return GoodSetReport(not failed, failed, deg_out, u_hi, lam, b1, b2, b3)


def sample_stars(g: Graph, kappa: float, rng: np.random.Generator) -> list[int]:
    """One sampling attempt: each vertex with probability ``min(1, κ log n / Δ)``."""
    lg = clog2(max(g.n, 2))
    p = min(1.0, kappa * lg / max(g.max_degree, 1))
    draws = rng.random(g.n)
    U = [u for u in range(g.n) if draws[u] < p]
    hi = high_vertices(g)
    if len(hi) < g.max_degree / 4:
        half = g.max_degree / 2
        U = [u for u in U if len(g.adj[u]) <= half]
    return U


@dataclass
class ExtractResult:
    U: Optional[list[int]]
    attempts: int
    failures: dict[str, int] = field(default_factory=dict)


def extract_stars(g: Graph, cfg: PipelineConfig, rng: np.random.Generator) -> ExtractResult:
    """Sample until a good set is found or ``cfg.retries`` attempts are used."""
    failures: dict[str, int] = {}
    for attempt in range(1, cfg.retries + 1):
        U = sample_stars(g, cfg.kappa, rng)
        rep = check_good_set(g, U, cfg.kappa, cfg.slack)
        if rep.ok:
            return ExtractResult(U, attempt, failures)
        for c in rep.failed:
            failures[c] = failures.get(c, 0) + 1
    return ExtractResult(None, cfg.retries, failures)


# -------------------------------------------------------------- coloring


def _stars_load(chi: PartialColoring, vertices) -> int:
    """Uncolored edges incident on ``vertices`` (each counted once)."""
    adj, col = chi.g.adj, chi.color_of
    return len({e for u in vertices for _, e in adj[u] if not col[e]})


def fast_coloring(g: Graph, U: list[int], cfg: PipelineConfig) -> tuple[PartialColoring, dict]:
    """Color ``g`` given a good star set ``U``; always returns a complete coloring."""
    chi = PartialColoring(g)
    seed = cfg.seed
    phases = {"step1_base": 0, "step2_light": 0, "step3_heavy": 0, "step3_extend": 0, "fallback": 0}
    stats: dict = {"phases": phases}
    in_u = bytearray(g.n)
    for u in U:
        in_u[u] = 1
    half = g.max_degree / 2
    u_lo = [u for u in U if len(g.adj[u]) <= half]
    u_hi = [u for u in U if len(g.adj[u]) > half]
    stats["u_size"], stats["u_lo"], stats["u_hi"] = len(U), len(u_lo), len(u_hi)

    # Step 1: everything away from the stars
    inner = [e for e in range(g.m) if not in_u[g.eu[e]] and not in_u[g.ev[e]]]
    before = chi.uncolored
    colorer = cfg.base_colorer
    if isinstance(colorer, str):
        colorer = BASE_COLORERS[colorer]
    colorer(chi, inner, rngmod.stream(seed, rngmod.BASE))
    phases["step1_base"] = before - chi.uncolored
    rep = verify(g, chi)
    if not rep.proper:
        raise RuntimeError(f"base colorer produced an improper coloring: {rep.violations[:3]}")
    stars_rng = rngmod.stream(seed, rngmod.STARS)

    # Step 2: light stars
    light = stats["light"] = {"rounds": 0, "iterations": 0, "cap_exits": 0, "outcomes": {}}
    before = chi.uncolored
    while light["rounds"] < cfg.light_rounds:
        live = [u for u in u_lo if chi.udeg[u]]
        if not live:
            break
        d = min(chi.miss[u].bit_count() for u in live)
        res = color_light_stars(chi, live, d, stars_rng)
        light["rounds"] += 1
        light["iterations"] += res.iterations
        light["cap_exits"] += res.exit == "cap"
        for k, v in res.outcomes.items():
            light["outcomes"][k] = light["outcomes"].get(k, 0) + v
    phases["step2_light"] = before - chi.uncolored
    leftover = [e for u in u_lo for _, e in g.adj[u] if not chi.color_of[e]]
    if leftover:
        before = chi.uncolored
        sequential_vizing(chi, sorted(set(leftover)))
        phases["fallback"] += before - chi.uncolored

    # Step 3: heavy stars, then one edge at a time
    lg = clog2(max(g.n, 2))
    n_hi = len(high_vertices(g))
    delta = g.max_degree
    denom = min(delta * delta + math.isqrt(max(delta * g.n - 1, 0)) + 1, g.n) or 1
    tau = math.sqrt(g.m * n_hi / denom)
    heavy = stats["heavy"] = {"tau": round(tau, 6), "calls": 0, "rounds": 0, "buckets": []}
    before = chi.uncolored
    while heavy["calls"] < cfg.heavy_rounds and _stars_load(chi, u_hi) > tau:
        res = color_heavy_stars(chi, u_hi, stars_rng)
        heavy["calls"] += 1
        heavy["rounds"] += len(res.rounds)
        heavy["buckets"].extend(res.buckets)
        if res.colored == 0:
            break
    phases["step3_heavy"] = before - chi.uncolored

    ext = stats["extend"] = {
        "calls": 0, "iterations": {}, "truncations": 0, "fallbacks": 0,
        "max_iteration_recolors": 0, "longest_chain": 0,
    }
    before = chi.uncolored
    for e in range(g.m):
        if chi.color_of[e]:
            continue
        rng = rngmod.stream(seed, rngmod.EXTEND, ext["calls"])
        st = extend_coloring(chi, g.eu[e], g.ev[e], cfg.extend, rng)
        ext["calls"] += 1
        key = str(st.iterations)
        ext["iterations"][key] = ext["iterations"].get(key, 0) + 1
        ext["truncations"] += st.truncations
        ext["fallbacks"] += st.fallback_used
        ext["max_iteration_recolors"] = max(ext["max_iteration_recolors"], st.max_iteration_recolors)
        ext["longest_chain"] = max(ext["longest_chain"], max(st.chain_lengths, default=0))
    phases["step3_extend"] = before - chi.uncolored
    ext["iterations"] = dict(sorted(ext["iterations"].items(), key=lambda kv: int(kv[0])))
    return chi, stats


def color(
    g: Graph, cfg: Optional[PipelineConfig] = None, algo: str = "fast"
) -> tuple[PartialColoring, dict]:
    """Complete (Δ+1)-edge coloring of ``g`` plus a JSON-ready stats document."""
    cfg = cfg or PipelineConfig.for_graph(g)
    t0 = time.perf_counter()
    stats: dict = {
        "schema": STATS_SCHEMA,
        "algo": algo,
        "mode": cfg.mode,
        "seed": cfg.seed,
        "n": g.n,
        "m": g.m,
        "max_degree": g.max_degree,
        "threshold": round(cfg.threshold, 6),
        "extend_config": {k: v for k, v in asdict(cfg.extend).items() if k not in ("seed",)},
    }
    if algo not in ("fast", "baseline"):
        raise ValueError(f"unknown algo {algo!r}")
    branch = "baseline"
    if algo == "fast" and g.m and g.max_degree >= cfg.threshold:
        ex = extract_stars(g, cfg, rngmod.stream(cfg.seed, rngmod.EXTRACT))
        stats["extract"] = {"attempts": ex.attempts, "ok": ex.U is not None, "failures": ex.failures}
        if ex.U is not None:
            branch = "fast"
            chi, sub = fast_coloring(g, ex.U, cfg)
            stats.update(sub)
        else:
            branch = "baseline-after-extract"
    if branch != "fast":
        chi, bs = baseline_color(g, rngmod.stream(cfg.seed, rngmod.BASE))
        stats["phases"] = {"baseline": bs.edges}
        stats["baseline"] = asdict(bs)
    stats["branch"] = branch
    rep = verify(g, chi)
    stats["colors_used"] = rep.colors_used
    stats["proper"] = rep.proper
    stats["uncolored"] = rep.uncolored
    stats["work"] = chi.work
    stats["work_per_edge"] = round(chi.work / g.m, 6) if g.m else 0.0
    if cfg.timing:
        stats["wall_seconds"] = time.perf_counter() - t0
    return chi, stats
