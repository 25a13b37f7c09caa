"""``mdskit`` command line: generate, label, split, solve, bench.

Machine-first output: ``solve`` prints one JSON line, ``bench`` writes a CSV
(one row per instance/method/seed) plus an aggregate text table. Exit codes:
0 success, 1 usage error, 2 runtime failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from pathlib import Path

from mdskit import dataset as ds
from mdskit import gcn as gcn_mod
from mdskit.exact import SolveBudget, enumerate_optima, solve_exact
from mdskit.graph import Graph, read_edgelist
from mdskit.heuristics import (
    construct,
    construct_from_maps,
    greedy_heuristic,
    prune,
    random_heuristic,
)
from mdskit.ig import MODE_CLASSIC, MODE_GCN, IgConfig, run_ig

METHODS = ("random", "greedy", "gcn", "ig", "ig-gcn", "exact")
CSV_COLUMNS = ["instance", "method", "seed", "size", "gamma", "deviation_pct", "elapsed_ms"]
DEFAULT_RANDOM_SEEDS = [0, 1, 2, 3, 4]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _parse_range(text: str) -> tuple[int, int]:
    if ":" in text:
        lo, hi = text.split(":", 1)
        return int(lo), int(hi)
    v = int(text)
    return v, v


@lru_cache(maxsize=4)
def _load_weights_cached(path: str):
    return gcn_mod.load_weights(path)


def _load_graph(path: str) -> tuple[Graph, int | None]:
    """Edge-list or instance JSON; returns (graph, gamma-if-known)."""
    if path.endswith(".json"):
        inst = ds.load_instance(path)
        return inst.graph, inst.gamma
    return read_edgelist(path), None


def _run_method(g: Graph, gamma, method: str, args) -> dict:
    start = time.monotonic()
    if method == "greedy":
        size = len(prune(g, construct(g, greedy_heuristic())))
    elif method == "random":
        size = len(prune(g, construct(g, random_heuristic(args.seed))))
    elif method == "gcn":
        maps = gcn_mod.forward(g, _load_weights_cached(args.weights))
        size = len(construct_from_maps(g, maps))
    elif method in ("ig", "ig-gcn"):
        cfg = IgConfig(
            beta=args.beta,
            delta_max=args.delta_max,
            time_limit=args.time_limit_ms / 1000.0,
            seed=args.seed,
            mode=MODE_GCN if method == "ig-gcn" else MODE_CLASSIC,
        )
        maps = None
        if method == "ig-gcn":
            maps = gcn_mod.forward(g, _load_weights_cached(args.weights))
        best, _ = run_ig(g, cfg, maps)
        size = len(best)
    elif method == "exact":
        budget = SolveBudget(
            max_nodes=args.budget_nodes,
            max_seconds=args.time_limit_ms / 1000.0 if args.time_limit_ms else None,
        )
        res = solve_exact(g, budget)
        size = res.gamma
        if gamma is None:
            gamma = res.gamma
    else:
        raise ValueError(f"unknown method {method!r}")
    elapsed_ms = (time.monotonic() - start) * 1000.0
    record = {
        "method": method,
        "seed": args.seed if method in ("random", "ig", "ig-gcn") else "",
        "size": size,
        "gamma": gamma if gamma is not None else "",
        "deviation_pct": round(100.0 * (size - gamma) / gamma, 4) if gamma else "",
        "elapsed_ms": round(elapsed_ms, 3),
    }
    return record


def cmd_solve(args) -> int:
    if args.method in ("gcn", "ig-gcn") and not args.weights:
        print("solve: --weights is required for gcn methods", file=sys.stderr)
        return 1
    g, gamma = _load_graph(args.graph)
    record = _run_method(g, gamma, args.method, args)
    record["instance"] = Path(args.graph).name
    print(json.dumps(record, sort_keys=True))
    return 0


def cmd_generate(args) -> int:
    n_range = _parse_range(args.n)
    p_range = None
    if args.p is not None:
        if ":" in args.p:
            lo, hi = args.p.split(":", 1)
            p_range = (float(lo), float(hi))
        else:
            p_range = (float(args.p), float(args.p))
    manifest = ds.generate_dataset(
        args.out,
        count=args.count,
        n_range=n_range,
        p_range=p_range,
        seed=args.seed,
        max_solutions_per_instance=args.max_solutions,
        label_budget_s=args.budget_s,
        jobs=args.jobs,
    )
    print(json.dumps(manifest.summary, sort_keys=True))
    return 0


def cmd_label(args) -> int:
    in_dir = Path(args.graphs)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    budget = SolveBudget(max_seconds=args.budget_s)
    paths = []
    instances = []
    for src in sorted(in_dir.glob("*.el")):
        g = read_edgelist(src)
        solutions = enumerate_optima(g, args.max_solutions, budget)
        inst = ds.Instance(
            graph=g,
            gamma=len(solutions[0]),
            solutions=solutions,
            provenance={"source": src.name, "max_solutions": args.max_solutions},
        )
        name = src.stem + ".json"
        ds.save_instance(inst, out_dir / name)
        paths.append(name)
        instances.append(inst)
    if not instances:
        print(f"label: no .el files found in {in_dir}", file=sys.stderr)
        return 1
    manifest = ds.DatasetManifest(instances=paths, summary=ds._summarize(instances))
    ds.save_manifest(manifest, out_dir / "manifest.json")
    print(json.dumps(manifest.summary, sort_keys=True))
    return 0


def cmd_split(args) -> int:
    manifest = ds.load_manifest(args.manifest)
    manifest = ds.split_dataset(manifest, args.fraction, args.seed)
    ds.save_manifest(manifest, args.manifest)
    print(
        json.dumps(
            {"train": len(manifest.split["train"]), "test": len(manifest.split["test"])},
            sort_keys=True,
        )
    )
    return 0


def _bench_task(task):
    inst_path, method, seed, ns_dict = task
    args = argparse.Namespace(**ns_dict)
    args.seed = seed
    g, gamma = _load_graph(inst_path)
    try:
        record = _run_method(g, gamma, method, args)
    except Exception as exc:  # record the failure, keep the run going
        record = {
            "method": method,
            "seed": seed,
            "size": "",
            "gamma": gamma if gamma is not None else "",
            "deviation_pct": "",
            "elapsed_ms": "",
            "error": str(exc),
        }
    record["instance"] = Path(inst_path).name
    return record


def cmd_bench(args) -> int:
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in METHODS:
            print(f"bench: unknown method {m!r}", file=sys.stderr)
            return 1
    if any(m in ("gcn", "ig-gcn") for m in methods) and not args.weights:
        print("bench: --weights is required for gcn methods", file=sys.stderr)
        return 1
    manifest = ds.load_manifest(args.manifest)
    base = Path(args.manifest).parent
    names = manifest.instances
    if args.split and manifest.split:
        names = manifest.split[args.split]
    seeds = [int(s) for s in args.seeds.split(",")] if args.seeds else DEFAULT_RANDOM_SEEDS
    ns_dict = dict(
        weights=args.weights,
        beta=args.beta,
        delta_max=args.delta_max,
        time_limit_ms=args.time_limit_ms,
        budget_nodes=args.budget_nodes,
    )
    tasks = []
    for name in names:
        for method in methods:
            for seed in seeds if method in ("random", "ig", "ig-gcn") else [args.seed]:
                tasks.append((str(base / name), method, seed, ns_dict))
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            records = list(pool.map(_bench_task, tasks, chunksize=1))
    else:
        records = [_bench_task(t) for t in tasks]
    records.sort(key=lambda r: (r["instance"], r["method"], str(r["seed"])))
    with open(args.out, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, extrasaction="ignore")
        writer.writeheader()
        writer.writerows(records)
    summary = aggregate(records)
    for method in methods:
        row = summary[method]
        dev = f"{row['mean_deviation_pct']:.2f}" if row["mean_deviation_pct"] is not None else "n/a"
        print(f"{method:8s} mean_size={row['mean_size']:.3f} mean_deviation_pct={dev} runs={row['runs']}")
    failures = [r for r in records if r.get("error")]
    for r in failures:
        print(f"FAILED {r['instance']} {r['method']}: {r['error']}", file=sys.stderr)
    return 0


def aggregate(records) -> dict:
    """Per-method mean size and mean percent deviation over successful runs."""
    out: dict[str, dict] = {}
    for r in records:
        if r.get("error") or r["size"] == "":
            continue
        agg = out.setdefault(r["method"], {"sizes": [], "devs": []})
        agg["sizes"].append(float(r["size"]))
        if r["deviation_pct"] != "":
            agg["devs"].append(float(r["deviation_pct"]))
    summary = {}
    for method, agg in out.items():
        summary[method] = {
            "mean_size": sum(agg["sizes"]) / len(agg["sizes"]),
            "mean_deviation_pct": (sum(agg["devs"]) / len(agg["devs"])) if agg["devs"] else None,
            "runs": len(agg["sizes"]),
        }
    return summary


def build_parser() -> _Parser:
    parser = _Parser(prog="mdskit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate and exactly label ER instances")
    p.add_argument("out", help="output directory")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--n", required=True, help="vertex count or range lo:hi")
    p.add_argument("--p", help="edge probability or range lo:hi (default: sparse degree window)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-solutions", type=int, default=32)
    p.add_argument("--budget-s", type=float, default=60.0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("label", help="exactly label edge-list graphs from a directory")
    p.add_argument("graphs", help="directory of .el files")
    p.add_argument("out", help="output directory")
    p.add_argument("--max-solutions", type=int, default=32)
    p.add_argument("--budget-s", type=float, default=60.0)
    p.set_defaults(func=cmd_label)

    p = sub.add_parser("split", help="assign a train/test split inside a manifest")
    p.add_argument("manifest")
    p.add_argument("--fraction", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("solve", help="run one method on one graph, print a JSON record")
    p.add_argument("graph", help="edge-list (.el) or instance (.json) file")
    p.add_argument("--method", choices=METHODS, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--weights", help="GCN weight file (gcn / ig-gcn)")
    p.add_argument("--beta", type=float, default=0.2)
    p.add_argument("--delta-max", type=int, default=200)
    p.add_argument("--time-limit-ms", type=float, default=60000.0)
    p.add_argument("--budget-nodes", type=int)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bench", help="run methods over a manifest, write CSV + summary")
    p.add_argument("manifest")
    p.add_argument("--methods", required=True, help="comma-separated subset of " + ",".join(METHODS))
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--split", choices=["train", "test"], help="restrict to one side of the split")
    p.add_argument("--weights")
    p.add_argument("--seeds", help="comma-separated seeds for randomized methods")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--beta", type=float, default=0.2)
    p.add_argument("--delta-max", type=int, default=200)
    p.add_argument("--time-limit-ms", type=float, default=60000.0)
    p.add_argument("--budget-nodes", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit:
        raise
    except (OSError, ValueError, RuntimeError) as exc:
        print(f"mdskit {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
