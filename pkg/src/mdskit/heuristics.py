"""Construction heuristics, the generic greedy loop, and the pruning pass."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from mdskit import kernels
from mdskit.graph import Graph, VertexSet, coverage_mask, is_dominating


@dataclass(frozen=True)
class Heuristic:
    """A vertex-scoring rule for the greedy construction loop.

    ``greedy`` rescores dynamically (count of newly covered vertices);
    ``random`` and ``map`` score once per construction and stay static.
    """

    kind: str  # "greedy" | "random" | "map"
    seed: Optional[int] = None
    map_index: Optional[int] = None
    map_values: Optional[Sequence[float]] = None

    def score(self, g: Graph, s: VertexSet, v: int) -> float:
        if self.kind == "greedy":
            return greedy_score(g, s, v)
        if self.kind == "map":
            return float(self.map_values[v])
        raise ValueError("random heuristic scores are drawn per construction, not queried")


def greedy_heuristic() -> Heuristic:
    return Heuristic(kind="greedy")


def random_heuristic(seed: int) -> Heuristic:
    return Heuristic(kind="random", seed=seed)


def map_heuristic(maps, index: int) -> Heuristic:
    if index < 0 or index >= maps.values.shape[0]:
        raise IndexError(f"map index {index} out of range for {maps.values.shape[0]} maps")
    return Heuristic(kind="map", map_index=index, map_values=maps.values[index])


def greedy_score(g: Graph, s: VertexSet, v: int) -> int:
    """|N[v] \\ N[S]|: how many vertices adding v would newly cover."""
    if v in s:
        raise ValueError(f"vertex {v} already in the set")
    return (g.nbhd[v] & ~coverage_mask(g, s)).bit_count()


def _static_order(g: Graph, h: Heuristic) -> list[int]:
    if h.kind == "random":
        rng = random.Random(h.seed)
        scores = [rng.random() for _ in range(g.n)]
    else:
        scores = [float(h.map_values[v]) for v in range(g.n)]
    return sorted(range(g.n), key=lambda v: (-scores[v], v))


def construct(g: Graph, h: Heuristic, partial: Sequence[int] = ()) -> VertexSet:
    """Greedy construction loop: add argmax-scoring vertices until domination.

    ``partial`` seeds the coverage (used by IG reconstruction). Ties always
    break toward the lowest vertex id.
    """
    if h.kind == "greedy":
        members = kernels.greedy_construct(g, list(partial))
    else:
        members = kernels.static_construct(g, _static_order(g, h), list(partial))
    return VertexSet(members)


def prune(g: Graph, s: VertexSet) -> VertexSet:
    """Drop redundant members, scanning in reverse insertion order (Alg-3)."""
    if not is_dominating(g, s):
        raise ValueError("prune requires a dominating set")
    return VertexSet(kernels.prune(g, s.members))


def construct_from_maps(g: Graph, maps) -> VertexSet:
    """Build one pruned candidate per probability map; keep the smallest.

    Ties go to the lowest map index.
    """
    m, n = maps.values.shape
    if n != g.n:
        raise ValueError(f"maps cover {n} vertices but graph has {g.n}")
    best: Optional[VertexSet] = None
    for k in range(m):
        cand = prune(g, construct(g, map_heuristic(maps, k)))
        if best is None or len(cand) < len(best):
            best = cand
    return best
