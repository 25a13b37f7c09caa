"""Acceptance suite: one test per release criterion, one PASS line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines as they
complete. Several tests sweep hundreds of instances; the whole module is
budgeted to finish in a few minutes.
"""

import math
import random
import time
from pathlib import Path

import numpy as np
import pytest

from mdskit.dataset import generate_dataset, load_instance
from mdskit.exact import brute_force_gamma, enumerate_optima
from mdskit.gcn import GcnWeights, forward, load_weights, random_weights, save_weights
from mdskit.graph import Graph, VertexSet, generate_er, is_dominating, relabel
from mdskit.heuristics import (
    construct,
    construct_from_maps,
    greedy_heuristic,
    prune,
    random_heuristic,
)
from mdskit.ig import IgConfig, run_ig
from mdskit.exact import solve_exact
from tests.conftest import cycle, path

FIXTURE_WEIGHTS = Path(__file__).parent / "fixtures" / "gcn_weights.json"


def report(name: str, detail: str) -> None:
    print(f"ACCEPTANCE {name}: PASS ({detail})")


def test_oracle_equivalence():
    rnd = random.Random(20_240_001)
    start = time.monotonic()
    for i in range(1000):
        n = rnd.randint(1, 12)
        p = rnd.choice([0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9])
        g = generate_er(n, p, seed=rnd.randrange(1 << 30))
        assert solve_exact(g).gamma == brute_force_gamma(g), f"mismatch on graph {i}"
    elapsed = time.monotonic() - start
    assert elapsed < 300.0
    report("oracle-equivalence", f"1000 graphs, 0 mismatches, {elapsed:.1f}s")


def test_c6_enumeration():
    sols = enumerate_optima(cycle(6), 10)
    assert {frozenset(s.members) for s in sols} == {
        frozenset({0, 3}),
        frozenset({1, 4}),
        frozenset({2, 5}),
    }
    report("c6-enumeration", "exactly the three opposite pairs")


def test_greedy_bound():
    rnd = random.Random(7)
    for i in range(500):
        n = rnd.randint(2, 200)
        p = rnd.uniform(0.01, 0.5)
        g = generate_er(n, p, seed=rnd.randrange(1 << 30))
        size = len(construct(g, greedy_heuristic()))
        bound = g.n + 1 - math.sqrt(2 * g.edge_count + 1)
        assert size <= bound + 1e-9, f"violation on graph {i}: {size} > {bound}"
    report("greedy-bound", "500 graphs, 0 violations")


@pytest.fixture(scope="module")
def labeled_corpus(tmp_path_factory):
    out = tmp_path_factory.mktemp("corpus")
    manifest = generate_dataset(out, count=40, n_range=(8, 18), seed=11, jobs=2)
    return [load_instance(out / name) for name in manifest.instances]


def test_domination_number_bounds(labeled_corpus):
    checked = 0
    for inst in labeled_corpus:
        g = inst.graph
        if min(g.degree) < 1:
            continue
        delta_max = max(g.degree)
        assert math.ceil(g.n / (delta_max + 1)) <= inst.gamma <= g.n // 2
        checked += 1
    assert checked > 0
    report("gamma-bounds", f"{checked} labeled instances, 0 violations")


def test_prune_minimality_and_idempotence(labeled_corpus):
    checked = 0
    for inst in labeled_corpus:
        g = inst.graph
        outputs = [
            construct(g, greedy_heuristic()),
            construct(g, random_heuristic(0)),
            construct(g, random_heuristic(1)),
        ]
        for s in outputs:
            p = prune(g, s)
            assert is_dominating(g, p)
            assert prune(g, p) == p
            for v in p.members:
                rest = [u for u in p.members if u != v]
                assert not is_dominating(g, VertexSet(rest)), "prune left a redundant member"
            checked += 1
    report("prune-minimality", f"{checked} heuristic outputs, 0 violations")


def test_ig_monotonicity():
    start = time.monotonic()
    for seed in range(100):
        g = generate_er(200, 0.02, seed=seed)
        initial = len(prune(g, construct(g, greedy_heuristic())))
        t0 = time.monotonic()
        best, trace = run_ig(g, IgConfig(delta_max=25, time_limit=8.0, seed=seed))
        per_instance = time.monotonic() - t0
        assert per_instance <= 10.0
        assert len(best) <= initial
        sizes = [size for _, size, _ in trace.iterations]
        assert all(a >= b for a, b in zip(sizes, sizes[1:]))
    report("ig-monotonicity", f"100 instances, {time.monotonic() - start:.1f}s total")


def test_gcn_inference_properties(tmp_path):
    # zero weights: every output exactly one half
    g = generate_er(20, 0.2, seed=1)
    zero = GcnWeights(
        channel_dims=[4, 4, 2],
        layers=[(np.zeros((4, 4)), np.zeros((4, 4))), (np.zeros((4, 2)), np.zeros((4, 2)))],
    )
    assert np.all(forward(g, zero).values == 0.5)

    # permutation equivariance on 50 (graph, permutation) pairs
    w = random_weights([6, 12, 6, 3], seed=5)
    for seed in range(50):
        g = generate_er(16, 0.25, seed=seed)
        perm = list(range(g.n))
        random.Random(seed).shuffle(perm)
        base = forward(g, w).values
        permuted = forward(relabel(g, perm), w).values
        for v in range(g.n):
            assert np.allclose(permuted[:, perm[v]], base[:, v], atol=1e-9)

    # hand-computed single-layer cases
    a, b = 0.3, -1.1
    one = GcnWeights(channel_dims=[1, 1], layers=[(np.array([[a]]), np.array([[b]]))])
    k2 = Graph(2, [(0, 1)])
    assert np.allclose(forward(k2, one).values, 1 / (1 + math.exp(-(a + b))), atol=1e-12)
    r = 1 / math.sqrt(2)
    p3 = forward(path(3), one).values[0]
    expected = [
        1 / (1 + math.exp(-(a + r * b))),
        1 / (1 + math.exp(-(a + 2 * r * b))),
        1 / (1 + math.exp(-(a + r * b))),
    ]
    assert np.allclose(p3, expected, atol=1e-12)

    # round trip is bit-exact
    f = tmp_path / "w.json"
    save_weights(w, f)
    loaded = load_weights(f)
    for (a0, a1), (b0, b1) in zip(w.layers, loaded.layers):
        assert np.array_equal(a0, b0) and np.array_equal(a1, b1)
    report("gcn-properties", "zero-weight, equivariance x50, hand cases, round trip")


def test_end_to_end_fixture_weights():
    w = load_weights(FIXTURE_WEIGHTS)
    rnd = random.Random(31)
    for i in range(200):
        n = rnd.randint(2, 60)
        p = rnd.uniform(0.03, 0.4)
        g = generate_er(n, p, seed=rnd.randrange(1 << 30))
        maps = forward(g, w)
        s = construct_from_maps(g, maps)
        assert is_dominating(g, s), f"non-dominating output on graph {i}"
    report("end-to-end", "200 graphs, fixture weights, all outputs dominate")
