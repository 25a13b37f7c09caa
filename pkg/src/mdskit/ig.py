"""Iterated-greedy search: destruct, reconstruct, locally improve, keep the best.

Two modes: ``classic`` reconstructs with the dynamic greedy score; ``gcn``
cycles through the learned probability maps (map 1 for the initial solution,
map ((t-1) mod m)+1 for iteration t).
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

from mdskit import kernels
from mdskit.gcn import ProbabilityMaps
from mdskit.graph import Graph, VertexSet, is_dominating
from mdskit.heuristics import Heuristic, construct, greedy_heuristic, map_heuristic

MODE_CLASSIC = "classic"
MODE_GCN = "gcn"


@dataclass
class IgConfig:
    beta: float = 0.2
    delta_max: int = 200
    time_limit: float = 60.0  # seconds
    seed: int = 0
    mode: str = MODE_CLASSIC

    def __post_init__(self):
        if not 0.0 < self.beta < 1.0:
            raise ValueError(f"beta must be in (0, 1), got {self.beta}")
        if self.delta_max < 1:
            raise ValueError(f"delta_max must be >= 1, got {self.delta_max}")
        if self.time_limit <= 0:
            raise ValueError(f"time_limit must be positive, got {self.time_limit}")
        if self.mode not in (MODE_CLASSIC, MODE_GCN):
            raise ValueError(f"unknown mode {self.mode!r}")


@dataclass
class IgTrace:
    iterations: list[tuple[int, int, float]] = field(default_factory=list)  # (iter, size, elapsed)
    final: Optional[VertexSet] = None


def random_destruction(s: VertexSet, beta: float, rng: random.Random) -> VertexSet:
    """Remove ceil(beta*|s|) uniformly chosen members, keeping survivor order."""
    if not 0.0 < beta < 1.0:
        raise ValueError(f"beta must be in (0, 1), got {beta}")
    k = math.ceil(beta * len(s))
    doomed = set(rng.sample(s.members, k))
    return VertexSet(v for v in s.members if v not in doomed)


def reconstruction(g: Graph, partial: VertexSet, h: Heuristic) -> VertexSet:
    """Greedily extend ``partial`` until it dominates again."""
    return construct(g, h, partial=partial.members)


def local_improvement(g: Graph, s: VertexSet, rng: Optional[random.Random] = None) -> VertexSet:
    """Prune, then 2-for-1 exchanges, repeated to a fixed point.

    Deterministic (ascending-id scans); ``rng`` is accepted for interface
    symmetry but unused.
    """
    if not is_dominating(g, s):
        raise ValueError("local improvement requires a dominating set")
    members = list(s.members)
    while True:
        before = len(members)
        members = kernels.prune(g, members)
        members = kernels.exchange_2_1(g, members)
        if len(members) == before:
            return VertexSet(members)


def _heuristic_for(cfg: IgConfig, maps: Optional[ProbabilityMaps], iteration: int) -> Heuristic:
    if cfg.mode == MODE_CLASSIC:
        return greedy_heuristic()
    m = maps.values.shape[0]
    return map_heuristic(maps, iteration % m)


def run_ig(
    g: Graph,
    cfg: IgConfig,
    maps: Optional[ProbabilityMaps] = None,
) -> tuple[VertexSet, IgTrace]:
    """Alg-2 loop; accepts strictly smaller solutions only.

    The wall clock is checked at iteration boundaries, so runs that hit
    ``delta_max`` first are reproducible per seed.
    """
    if cfg.mode == MODE_GCN:
        if maps is None:
            raise ValueError("gcn mode requires probability maps")
        if maps.values.shape[1] != g.n:
            raise ValueError(
                f"maps cover {maps.values.shape[1]} vertices but graph has {g.n}"
            )
    rng = random.Random(cfg.seed)
    start = time.monotonic()
    trace = IgTrace()

    incumbent = local_improvement(g, construct(g, _heuristic_for(cfg, maps, 0)))
    trace.iterations.append((0, len(incumbent), time.monotonic() - start))

    delta = 0
    iteration = 0
    while delta < cfg.delta_max and time.monotonic() - start < cfg.time_limit:
        iteration += 1
        partial = random_destruction(incumbent, cfg.beta, rng)
        rebuilt = reconstruction(g, partial, _heuristic_for(cfg, maps, iteration - 1))
        candidate = local_improvement(g, rebuilt)
        if len(candidate) < len(incumbent):
            incumbent = candidate
            delta = 0
            trace.iterations.append((iteration, len(incumbent), time.monotonic() - start))
        else:
            delta += 1
    trace.final = incumbent
    return incumbent, trace
