"""Check the learned-heuristic trend claims on a bench CSV.

Reads the CSV written by ``mdskit bench`` and verifies, over the held-out
instances:

  1. mean size of gcn <= mean size of greedy (both are pruned constructions)
  2. gcn is no worse than greedy on at least 60% of instances
  3. mean size of ig-gcn <= mean size of ig at the same time limit

Prints one PASS/FAIL line per claim and exits non-zero on any FAIL.

Usage: python3 scripts/trend_analysis.py results.csv
"""

import csv
import sys
from collections import defaultdict
from statistics import mean


def main(path: str) -> int:
    by_method = defaultdict(dict)  # method -> instance -> mean size over seeds
    sizes = defaultdict(lambda: defaultdict(list))
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            if row["size"] == "":
                print(f"FAIL: errored run {row['instance']} {row['method']}")
                return 1
            sizes[row["method"]][row["instance"]].append(float(row["size"]))
    for method, per_instance in sizes.items():
        for instance, values in per_instance.items():
            by_method[method][instance] = mean(values)

    failures = 0

    def check(name: str, ok: bool, detail: str) -> None:
        nonlocal failures
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        if not ok:
            failures += 1

    greedy = by_method["greedy"]
    gcn = by_method["gcn"]
    instances = sorted(greedy)
    assert set(instances) == set(gcn), "method instance sets differ"

    mean_greedy = mean(greedy[i] for i in instances)
    mean_gcn = mean(gcn[i] for i in instances)
    check(
        "mean-gcn-vs-greedy",
        mean_gcn <= mean_greedy,
        f"gcn {mean_gcn:.3f} vs greedy {mean_greedy:.3f} over {len(instances)} instances",
    )

    no_worse = sum(1 for i in instances if gcn[i] <= greedy[i])
    fraction = no_worse / len(instances)
    check(
        "per-instance-gcn-vs-greedy",
        fraction >= 0.6,
        f"gcn <= greedy on {no_worse}/{len(instances)} instances ({100 * fraction:.1f}%)",
    )

    ig = by_method["ig"]
    ig_gcn = by_method["ig-gcn"]
    mean_ig = mean(ig[i] for i in instances)
    mean_ig_gcn = mean(ig_gcn[i] for i in instances)
    check(
        "mean-ig-gcn-vs-ig",
        mean_ig_gcn <= mean_ig,
        f"ig-gcn {mean_ig_gcn:.3f} vs ig {mean_ig:.3f}",
    )
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1]))
