"""Labeled instance generation, storage, and train/test splitting."""

from __future__ import annotations

import json
import logging
import random
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from mdskit.exact import (
    DEFAULT_ENUMERATION_CAP,
    BudgetExceededError,
    SolveBudget,
    enumerate_optima,
)
from mdskit.graph import Graph, VertexSet, is_dominating

log = logging.getLogger(__name__)

KNOWN_INSTANCE_FIELDS = {"n", "edges", "gamma", "solutions", "provenance"}
# average-degree window for sampled edge densities; deliberately sparse
DEFAULT_DEGREE_RANGE = (3.0, 8.0)
DEFAULT_LABEL_BUDGET_S = 60.0


class InstanceFormatError(ValueError):
    """Instance file violates the schema or its own invariants."""


@dataclass
class Instance:
    graph: Graph
    gamma: int
    solutions: list[VertexSet]
    provenance: dict = field(default_factory=dict)

    def validate(self, name: str = "instance") -> None:
        seen = set()
        if not self.solutions:
            raise InstanceFormatError(f"{name}: no solutions stored")
        for i, s in enumerate(self.solutions):
            if len(s) != self.gamma:
                raise InstanceFormatError(
                    f"{name}: solution {i} has size {len(s)}, gamma is {self.gamma}"
                )
            if not is_dominating(self.graph, s):
                raise InstanceFormatError(f"{name}: solution {i} does not dominate")
            if s.mask in seen:
                raise InstanceFormatError(f"{name}: duplicate solution {i}")
            seen.add(s.mask)


@dataclass
class DatasetManifest:
    instances: list[str]  # paths relative to the manifest location
    split: Optional[dict] = None  # {"train": [...], "test": [...]}
    summary: dict = field(default_factory=dict)


def save_instance(inst: Instance, path) -> None:
    doc = {
        "n": inst.graph.n,
        "edges": [list(e) for e in inst.graph.edges],
        "gamma": inst.gamma,
        "solutions": [sorted(s.members) for s in inst.solutions],
        "provenance": inst.provenance,
    }
    with open(path, "w") as fh:
        json.dump(doc, fh)


def load_instance(path) -> Instance:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InstanceFormatError(f"{path}: parse error: {exc}") from exc
    unknown = set(doc) - KNOWN_INSTANCE_FIELDS
    if unknown:
        warnings.warn(f"{path}: ignoring unknown fields {sorted(unknown)}")
    for key in ("n", "edges", "gamma", "solutions"):
        if key not in doc:
            raise InstanceFormatError(f"{path}: missing field {key!r}")
    graph = Graph(doc["n"], [tuple(e) for e in doc["edges"]])
    inst = Instance(
        graph=graph,
        gamma=doc["gamma"],
        solutions=[VertexSet(s) for s in doc["solutions"]],
        provenance=doc.get("provenance", {}),
    )
    inst.validate(str(path))
    return inst


def save_manifest(manifest: DatasetManifest, path) -> None:
    doc = {
        "instances": manifest.instances,
        "split": manifest.split,
        "summary": manifest.summary,
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)


def load_manifest(path) -> DatasetManifest:
    with open(path) as fh:
        doc = json.load(fh)
    return DatasetManifest(
        instances=doc["instances"],
        split=doc.get("split"),
        summary=doc.get("summary", {}),
    )


def _summarize(instances: list[Instance]) -> dict:
    count = len(instances)
    return {
        "count": count,
        "mean_n": sum(i.graph.n for i in instances) / count if count else 0.0,
        "mean_gamma": sum(i.gamma for i in instances) / count if count else 0.0,
    }


def _label_attempt(task):
    attempt, n, p, graph_seed, max_solutions, budget_s = task
    g = generate_er_instance_graph(n, p, graph_seed)
    try:
        solutions = enumerate_optima(g, max_solutions, SolveBudget(max_seconds=budget_s))
    except BudgetExceededError:
        return attempt, None
    inst = Instance(
        graph=g,
        gamma=len(solutions[0]),
        solutions=solutions,
        provenance={
            "generator": "er",
            "n": n,
            "p": p,
            "seed": graph_seed,
            "attempt": attempt,
            "label_budget_s": budget_s,
            "max_solutions": max_solutions,
        },
    )
    return attempt, inst


def generate_dataset(
    out_dir,
    count: int,
    n_range: tuple[int, int],
    seed: int,
    p_range: Optional[tuple[float, float]] = None,
    degree_range: tuple[float, float] = DEFAULT_DEGREE_RANGE,
    max_solutions_per_instance: int = DEFAULT_ENUMERATION_CAP,
    label_budget_s: float = DEFAULT_LABEL_BUDGET_S,
    jobs: int = 1,
) -> DatasetManifest:
    """Generate and exactly label ER instances; write them plus a manifest.

    Instances whose exact solve exceeds the per-instance budget are discarded
    and logged; generation oversamples until ``count`` are labeled. Unless
    ``p_range`` is given, p is drawn so the expected average degree falls in
    ``degree_range``. Labeling is parallel over ``jobs`` workers; the result
    is deterministic for fixed parameters regardless of ``jobs``.
    """
    if n_range[0] > n_range[1] or n_range[0] < 1:
        raise ValueError(f"bad n_range {n_range}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    rng = random.Random(seed)
    labeled: list[Instance] = []
    paths: list[str] = []
    attempt = 0
    discarded = 0

    def next_task():
        nonlocal attempt
        attempt += 1
        n = rng.randint(n_range[0], n_range[1])
        if p_range is not None:
            p = rng.uniform(p_range[0], p_range[1])
        else:
            p = min(rng.uniform(degree_range[0], degree_range[1]) / (n - 1), 1.0)
        return (attempt, n, p, rng.randrange(2**31), max_solutions_per_instance, label_budget_s)

    def consume(results):
        nonlocal discarded
        for att, inst in sorted(results):
            if len(labeled) >= count:
                break
            if inst is None:
                discarded += 1
                log.warning("discarding attempt %d: label budget exceeded", att)
                continue
            inst.provenance["dataset_seed"] = seed
            name = f"instance_{len(labeled):05d}.json"
            save_instance(inst, out_dir / name)
            labeled.append(inst)
            paths.append(name)

    if jobs <= 1:
        while len(labeled) < count:
            consume([_label_attempt(next_task())])
    else:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            while len(labeled) < count:
                batch = [next_task() for _ in range(max(jobs, min(2 * jobs, count - len(labeled))))]
                consume(pool.map(_label_attempt, batch))

    summary = _summarize(labeled)
    summary["discarded"] = discarded
    manifest = DatasetManifest(instances=paths, split=None, summary=summary)
    save_manifest(manifest, out_dir / "manifest.json")
    return manifest


def generate_er_instance_graph(n: int, p: float, seed: int) -> Graph:
    # import here to keep dataset logic patchable in tests
    from mdskit.graph import generate_er

    return generate_er(n, p, seed)


def split_dataset(manifest: DatasetManifest, train_fraction: float, seed: int) -> DatasetManifest:
    """Deterministic train/test partition; train gets floor(fraction * count)."""
    if not 0.0 < train_fraction < 1.0:
        raise ValueError(f"train_fraction must be in (0, 1), got {train_fraction}")
    rng = random.Random(seed)
    order = list(manifest.instances)
    rng.shuffle(order)
    n_train = int(train_fraction * len(order))
    split = {"train": sorted(order[:n_train]), "test": sorted(order[n_train:])}
    return DatasetManifest(instances=manifest.instances, split=split, summary=manifest.summary)
