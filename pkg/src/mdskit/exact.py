"""Exact minimum-dominating-set solving and enumeration of distinct optima."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from mdskit import kernels
from mdskit.graph import Graph, VertexSet, is_dominating

BRUTE_FORCE_MAX_N = 25
DEFAULT_ENUMERATION_CAP = 32


@dataclass
class SolveBudget:
    """Optional limits for one exact solve."""

    max_nodes: Optional[int] = None
    max_seconds: Optional[float] = None


@dataclass
class ExactResult:
    gamma: int
    solution: VertexSet
    nodes_explored: int
    elapsed: float
    optimal: bool = True


class BudgetExceededError(RuntimeError):
    """Search budget ran out; carries the best (non-optimal) incumbent."""

    def __init__(self, incumbent: ExactResult):
        super().__init__(
            f"solve budget exceeded; best incumbent has size {incumbent.gamma} (not proven optimal)"
        )
        self.incumbent = incumbent


@dataclass
class BlockingSet:
    """A previously found optimum the next solve must not fully contain."""

    forbidden: VertexSet


def _initial_upper_bound(g: Graph) -> list[int]:
    return kernels.prune(g, kernels.greedy_construct(g, []))


def solve_exact(g: Graph, budget: Optional[SolveBudget] = None) -> ExactResult:
    """Minimum dominating set by branch-and-bound; deterministic tie-breaking."""
    start = time.monotonic()
    ub_members = _initial_upper_bound(g)
    best, nodes, completed = kernels.bnb(
        g,
        len(ub_members),
        [],
        node_limit=budget.max_nodes if budget else None,
        time_limit=budget.max_seconds if budget else None,
    )
    members = best if best is not None else ub_members
    result = ExactResult(
        gamma=len(members),
        solution=VertexSet(members),
        nodes_explored=nodes,
        elapsed=time.monotonic() - start,
        optimal=completed,
    )
    if not completed:
        raise BudgetExceededError(result)
    return result


def enumerate_optima(
    g: Graph,
    max_solutions: int = DEFAULT_ENUMERATION_CAP,
    budget: Optional[SolveBudget] = None,
) -> list[VertexSet]:
    """Distinct minimum dominating sets, all of size gamma.

    Iterative blocking: solve, forbid the solution found, re-solve; stops when
    the blocked optimum would exceed gamma or ``max_solutions`` is reached.
    """
    if max_solutions < 1:
        raise ValueError(f"max_solutions must be >= 1, got {max_solutions}")
    first = solve_exact(g, budget)
    gamma = first.gamma
    solutions = [first.solution]
    while len(solutions) < max_solutions:
        forbidden = [s.mask for s in solutions]
        best, nodes, completed = kernels.bnb(
            g,
            gamma + 1,
            forbidden,
            node_limit=budget.max_nodes if budget else None,
            time_limit=budget.max_seconds if budget else None,
        )
        if not completed:
            raise BudgetExceededError(
                ExactResult(gamma, solutions[0], nodes, 0.0, optimal=False)
            )
        if best is None:
            break  # blocked optimum exceeds gamma: all optima found
        solutions.append(VertexSet(best))
    return solutions


def brute_force_gamma(g: Graph) -> int:
    """Exhaustive oracle: smallest k with a dominating k-subset. Guarded to small n."""
    if g.n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force limited to n <= {BRUTE_FORCE_MAX_N}, got n={g.n}")
    full = (1 << g.n) - 1
    for k in range(g.n + 1):
        for combo in combinations(range(g.n), k):
            mask = 0
            for v in combo:
                mask |= g.nbhd[v]
            if mask == full:
                return k
    raise AssertionError("unreachable: the full vertex set always dominates")
