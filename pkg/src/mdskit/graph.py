"""Graph representation, domination predicates, random generators, and edge-list I/O.

Vertices are dense integer ids ``0..n-1``. Closed neighborhoods are kept as
Python-int bitmasks so coverage queries are single AND/OR operations.
"""

from __future__ import annotations

import math
import random
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np


class Graph:
    """Immutable simple undirected graph.

    Safe to share across workers: nothing is mutated after construction.
    """

    __slots__ = ("n", "adj", "degree", "nbhd", "_edges", "_packed")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 1:
            raise ValueError(f"vertex count must be >= 1, got {n}")
        adj: list[list[int]] = [[] for _ in range(n)]
        seen = set()
        edge_list = []
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
            edge_list.append(key)
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self.adj = tuple(tuple(sorted(nb)) for nb in adj)
        self.degree = tuple(len(nb) for nb in adj)
        # closed-neighborhood bitmasks: bit v plus bits of all neighbors
        nbhd = []
        for v in range(n):
            mask = 1 << v
            for u in adj[v]:
                mask |= 1 << u
            nbhd.append(mask)
        self.nbhd = tuple(nbhd)
        self._edges = tuple(sorted(edge_list))
        self._packed: Optional[np.ndarray] = None

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def packed_neighborhoods(self) -> np.ndarray:
        """Closed neighborhoods as a uint64 bitset matrix of shape (n, ceil(n/64)).

        Cached; consumed by the compiled kernels.
        """
        if self._packed is None:
            words = (self.n + 63) >> 6
            packed = np.zeros((self.n, words), dtype=np.uint64)
            for v, mask in enumerate(self.nbhd):
                for w in range(words):
                    packed[v, w] = (mask >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
            self._packed = packed
        return self._packed

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


class VertexSet:
    """Ordered set of distinct vertex ids with a membership bitmap.

    Insertion order is significant: pruning scans members in reverse
    insertion order.
    """

    __slots__ = ("members", "mask")

    def __init__(self, members: Iterable[int] = ()):
        self.members: list[int] = []
        self.mask: int = 0
        for v in members:
            self.add(v)

    def add(self, v: int) -> None:
        if v < 0:
            raise ValueError(f"negative vertex id {v}")
        bit = 1 << v
        if self.mask & bit:
            raise ValueError(f"duplicate vertex {v}")
        self.members.append(v)
        self.mask |= bit

    def __contains__(self, v: int) -> bool:
        return v >= 0 and bool(self.mask & (1 << v))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other) -> bool:
        # order-insensitive: two sets are equal when membership agrees
        return isinstance(other, VertexSet) and self.mask == other.mask

    def __hash__(self) -> int:
        return hash(self.mask)

    def __repr__(self) -> str:
        return f"VertexSet({sorted(self.members)})"


class GraphStats(NamedTuple):
    n: int
    edge_count: int
    max_degree: int
    min_degree: int


def graph_stats(g: Graph) -> GraphStats:
    return GraphStats(g.n, g.edge_count, max(g.degree), min(g.degree))


def _check_members(g: Graph, s: VertexSet) -> None:
    if s.mask >> g.n:
        raise ValueError("vertex set contains ids out of range for graph")


def closed_neighborhood(g: Graph, s: VertexSet) -> VertexSet:
    """N[S]: every member of s plus every neighbor of a member."""
    _check_members(g, s)
    mask = 0
    for v in s:
        mask |= g.nbhd[v]
    out = VertexSet()
    out.mask = mask
    v = 0
    while mask:
        if mask & 1:
            out.members.append(v)
        mask >>= 1
        v += 1
    return out


def coverage_mask(g: Graph, s: VertexSet) -> int:
    _check_members(g, s)
    mask = 0
    for v in s:
        mask |= g.nbhd[v]
    return mask


def is_dominating(g: Graph, s: VertexSet) -> bool:
    return coverage_mask(g, s) == (1 << g.n) - 1


def generate_er(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p): each unordered pair kept independently with probability p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must be in [0, 1], got {p}")
    rng = random.Random(seed)
    edges: list[tuple[int, int]] = []
    if p >= 1.0:
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    elif p > 0.25:
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < p:
                    edges.append((u, v))
    elif p > 0.0:
        # geometric skipping over the pair index (Batagelj-Brandes);
        # same distribution as the naive Bernoulli scan, far fewer draws
        log1mp = math.log(1.0 - p)
        v, w = 1, -1
        while v < n:
            w += 1 + int(math.log(1.0 - rng.random()) / log1mp)
            while w >= v and v < n:
                w -= v
                v += 1
            if v < n:
                edges.append((w, v))
    return Graph(n, edges)


def generate_ba(n: int, k: int, seed: int) -> Graph:
    """Preferential attachment: each newcomer picks k distinct earlier vertices.

    Starts from an edgeless k-vertex core; the first newcomer attaches to all
    of it, so the final edge count is exactly k*(n-k). Repeated draws are
    resampled until the newcomer has k distinct targets.
    """
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
    rng = random.Random(seed)
    edges: list[tuple[int, int]] = []
    # flat endpoint list: sampling from it is degree-proportional
    endpoints: list[int] = []
    for v in range(k, n):
        if v == k:
            targets = list(range(k))
        else:
            targets = []
            chosen = set()
            while len(targets) < k:
                t = endpoints[rng.randrange(len(endpoints))]
                if t not in chosen:
                    chosen.add(t)
                    targets.append(t)
        for t in targets:
            edges.append((t, v))
            endpoints.append(t)
            endpoints.append(v)
    return Graph(n, edges)


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Apply a vertex permutation: vertex v becomes perm[v]."""
    if sorted(perm) != list(range(g.n)):
        raise ValueError("perm must be a permutation of 0..n-1")
    return Graph(g.n, [(perm[u], perm[v]) for u, v in g.edges])


def read_edgelist(path) -> Graph:
    """Parse the text format: header line ``n m``, then m lines ``u v``.

    Blank lines and ``#`` comments are ignored.
    """
    header = None
    edges = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected two integers, got {line!r}")
            try:
                a, b = int(parts[0]), int(parts[1])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: non-integer token in {line!r}") from exc
            if header is None:
                header = (a, b)
            else:
                edges.append((a, b))
    if header is None:
        raise ValueError(f"{path}: empty edge-list file")
    n, m = header
    if len(edges) != m:
        raise ValueError(f"{path}: header declares {m} edges, found {len(edges)}")
    return Graph(n, edges)


def write_edgelist(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"{g.n} {g.edge_count}\n")
        for u, v in g.edges:
            fh.write(f"{u} {v}\n")
