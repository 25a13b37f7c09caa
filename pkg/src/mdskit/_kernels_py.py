"""Pure-Python kernel backend.

Implements the hot loops (greedy construction, pruning, 2-for-1 exchange,
branch-and-bound) on Python-int bitmasks. The compiled backend in
``_kernels.pyx`` implements the same contracts on uint64 bitset arrays;
``kernels.py`` picks one at import time.
"""

from __future__ import annotations

import time

BACKEND = "pure"


def greedy_construct(g, partial):
    """Alg-1 construction with the dynamic greedy score |N[v] \\ N[S]|.

    One argmax vertex is added per iteration, ties broken by lowest id.
    Returns the member list in insertion order, ``partial`` first.
    """
    n = g.n
    nbhd = g.nbhd
    full = (1 << n) - 1
    members = list(partial)
    in_mask = 0
    covered = 0
    for v in members:
        in_mask |= 1 << v
        covered |= nbhd[v]
    while covered != full:
        uncov = full & ~covered
        best_v = -1
        best_c = 0
        for v in range(n):
            if in_mask & (1 << v):
                continue
            c = (nbhd[v] & uncov).bit_count()
            if c > best_c:
                best_c = c
                best_v = v
        members.append(best_v)
        in_mask |= 1 << best_v
        covered |= nbhd[best_v]
    return members


def static_construct(g, order, partial):
    """Alg-1 construction with a static heuristic.

    ``order`` is all n vertices sorted by descending score (ties by the
    caller's rule); vertices are added in that order until domination,
    matching the literal argmax-of-a-static-function reading.
    """
    nbhd = g.nbhd
    full = (1 << g.n) - 1
    members = list(partial)
    in_mask = 0
    covered = 0
    for v in members:
        in_mask |= 1 << v
        covered |= nbhd[v]
    for v in order:
        if covered == full:
            break
        if in_mask & (1 << v):
            continue
        members.append(v)
        in_mask |= 1 << v
        covered |= nbhd[v]
    return members


def _cover_counts(g, members):
    cnt = [0] * g.n
    for v in members:
        cnt[v] += 1
        for u in g.adj[v]:
            cnt[u] += 1
    return cnt


def prune(g, members):
    """Reverse-insertion-order redundancy removal (last added tested first).

    Input must dominate; the result dominates and is minimal with respect to
    single-vertex removal. Survivor order is preserved.
    """
    cnt = _cover_counts(g, members)
    keep = [True] * len(members)
    for i in range(len(members) - 1, -1, -1):
        v = members[i]
        if cnt[v] >= 2 and all(cnt[u] >= 2 for u in g.adj[v]):
            keep[i] = False
            cnt[v] -= 1
            for u in g.adj[v]:
                cnt[u] -= 1
    return [v for i, v in enumerate(members) if keep[i]]


def exchange_2_1(g, members):
    """Replace a pair of members with a single outside vertex while dominating.

    Scans pairs and candidates in ascending vertex id; accepts the first
    improving replacement and restarts until a full scan finds none.
    """
    nbhd = g.nbhd
    members = list(members)
    cnt = _cover_counts(g, members)
    in_mask = 0
    for v in members:
        in_mask |= 1 << v
    improved = True
    while improved:
        improved = False
        ordered = sorted(members)
        for i in range(len(ordered)):
            u = ordered[i]
            for j in range(i + 1, len(ordered)):
                v = ordered[j]
                # vertices left uncovered if u and v both leave
                need = 0
                for x in g.adj[u] + (u,):
                    if cnt[x] == (1 if x == u or (nbhd[u] >> x) & 1 else 0) + (
                        1 if x == v or (nbhd[v] >> x) & 1 else 0
                    ):
                        need |= 1 << x
                for x in g.adj[v] + (v,):
                    if cnt[x] == (1 if x == u or (nbhd[u] >> x) & 1 else 0) + (
                        1 if x == v or (nbhd[v] >> x) & 1 else 0
                    ):
                        need |= 1 << x
                if need == 0:
                    continue
                m0 = (need & -need).bit_length() - 1
                w_found = -1
                for w in sorted(g.adj[m0] + (m0,)):
                    if in_mask & (1 << w):
                        continue
                    if nbhd[w] & need == need:
                        w_found = w
                        break
                if w_found < 0:
                    continue
                members = [x for x in members if x != u and x != v]
                members.append(w_found)
                in_mask &= ~((1 << u) | (1 << v))
                in_mask |= 1 << w_found
                cnt[u] -= 1
                for x in g.adj[u]:
                    cnt[x] -= 1
                cnt[v] -= 1
                for x in g.adj[v]:
                    cnt[x] -= 1
                cnt[w_found] += 1
                for x in g.adj[w_found]:
                    cnt[x] += 1
                improved = True
                break
            if improved:
                break
    return members


def bnb(g, ub_size, forbidden_masks, node_limit=None, time_limit=None):
    """Branch-and-bound search for a dominating set strictly smaller than ub_size.

    Branches on an undominated vertex with the fewest allowed coverers; each
    candidate branch excludes the candidates already tried (no duplicate
    subtrees). Lower bound: |S| + ceil(#undominated / best remaining cover).
    A partial set containing any ``forbidden_masks`` entry entirely is cut.

    Returns ``(best_members_or_None, nodes_explored, completed)``.
    """
    n = g.n
    nbhd = g.nbhd
    full = (1 << n) - 1
    deadline = None if time_limit is None else time.monotonic() + time_limit
    state = {"nodes": 0, "best": None, "best_size": ub_size, "aborted": False}

    def blocked(s_mask):
        for f in forbidden_masks:
            if f & ~s_mask == 0:
                return True
        return False

    def rec(covered, excluded, s):
        state["nodes"] += 1
        if node_limit is not None and state["nodes"] > node_limit:
            state["aborted"] = True
            return
        if deadline is not None and state["nodes"] % 1024 == 0 and time.monotonic() > deadline:
            state["aborted"] = True
            return
        s = list(s)
        s_mask = 0
        for v in s:
            s_mask |= 1 << v
        # forced moves: any undominated vertex with a single allowed coverer
        while covered != full:
            uncov = full & ~covered
            forced = -1
            pick_u = -1
            pick_cands = None
            best_k = n + 1
            m = uncov
            while m:
                u = (m & -m).bit_length() - 1
                m &= m - 1
                cands = nbhd[u] & ~excluded
                k = cands.bit_count()
                if k == 0:
                    return  # u can never be covered on this branch
                if k == 1:
                    forced = cands.bit_length() - 1
                    break
                if k < best_k:
                    best_k = k
                    pick_u = u
                    pick_cands = cands
            if forced >= 0:
                s.append(forced)
                s_mask |= 1 << forced
                covered |= nbhd[forced]
                if len(s) >= state["best_size"] and covered != full:
                    return
                if forbidden_masks and blocked(s_mask):
                    return
                continue
            break
        if covered == full:
            if len(s) < state["best_size"] and not (forbidden_masks and blocked(s_mask)):
                state["best"] = list(s)
                state["best_size"] = len(s)
            return
        # lower bound: fewest allowed vertices whose cover counts sum to the
        # number of undominated vertices (counting-sort prefix)
        uncov = full & ~covered
        u_count = uncov.bit_count()
        buckets = [0] * (n + 2)
        m = full & ~excluded
        while m:
            w = (m & -m).bit_length() - 1
            m &= m - 1
            buckets[(nbhd[w] & uncov).bit_count()] += 1
        need = u_count
        lb = 0
        for c in range(n + 1, 0, -1):
            if buckets[c]:
                take = min(buckets[c], -(-need // c))
                lb += take
                need -= take * c
                if need <= 0:
                    break
        if len(s) + lb >= state["best_size"]:
            return
        # branch on coverers of pick_u, most new coverage first, ties by id
        cands = []
        m = pick_cands
        while m:
            w = (m & -m).bit_length() - 1
            m &= m - 1
            cands.append((-((nbhd[w] & uncov).bit_count()), w))
        cands.sort()
        child_excluded = excluded
        for _, w in cands:
            if state["aborted"]:
                return
            w_bit = 1 << w
            if not (forbidden_masks and blocked(s_mask | w_bit)):
                s.append(w)
                rec(covered | nbhd[w], child_excluded, s)
                s.pop()
            child_excluded |= w_bit
        return

    rec(0, 0, [])
    return state["best"], state["nodes"], not state["aborted"]
