# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend.

Same contracts as ``_kernels_py`` (greedy construction, pruning, 2-for-1
exchange, branch-and-bound) on uint64 bitset matrices from
``Graph.packed_neighborhoods()``. Selection and tie-break rules match the
pure backend exactly, so both return identical results.
"""

import time

import numpy as np

cimport numpy as cnp
from libc.stdlib cimport free, malloc
from libc.string cimport memcpy, memset

cdef extern from *:
    """
    #define POPCOUNT64(x) __builtin_popcountll(x)
    #define CTZ64(x) __builtin_ctzll(x)
    """
    int POPCOUNT64(unsigned long long x) nogil
    int CTZ64(unsigned long long x) nogil

ctypedef unsigned long long u64

BACKEND = "compiled"


cdef inline bint get_bit(u64* bits, int v) nogil:
    return (bits[v >> 6] >> (v & 63)) & 1ULL


cdef inline void set_bit(u64* bits, int v) nogil:
    bits[v >> 6] |= 1ULL << (v & 63)


cdef inline int popcount_and_not(u64* a, u64* covered, int words) nogil:
    cdef int i, c = 0
    for i in range(words):
        c += POPCOUNT64(a[i] & ~covered[i])
    return c


cdef inline void or_into(u64* dst, u64* src, int words) nogil:
    cdef int i
    for i in range(words):
        dst[i] |= src[i]


def greedy_construct(g, partial):
    cdef cnp.ndarray[u64, ndim=2] packed = g.packed_neighborhoods()
    cdef int n = g.n
    cdef int words = packed.shape[1]
    cdef u64* nb = <u64*> packed.data
    cdef u64* covered = <u64*> malloc(words * sizeof(u64))
    cdef u64* inmask = <u64*> malloc(words * sizeof(u64))
    memset(covered, 0, words * sizeof(u64))
    memset(inmask, 0, words * sizeof(u64))
    members = list(partial)
    cdef int v, best_v, best_c, c, total, uncovered
    for v in members:
        set_bit(inmask, v)
        or_into(covered, nb + v * words, words)
    total = n
    uncovered = n - _count_covered(covered, words, n)
    while uncovered > 0:
        best_v = -1
        best_c = 0
        for v in range(n):
            if get_bit(inmask, v):
                continue
            c = popcount_and_not(nb + v * words, covered, words)
            if c > best_c:
                best_c = c
                best_v = v
        members.append(best_v)
        set_bit(inmask, best_v)
        or_into(covered, nb + best_v * words, words)
        uncovered -= best_c
    free(covered)
    free(inmask)
    return members


cdef int _count_covered(u64* covered, int words, int n) nogil:
    cdef int i, c = 0
    for i in range(words):
        c += POPCOUNT64(covered[i])
    return c


def static_construct(g, order, partial):
    cdef cnp.ndarray[u64, ndim=2] packed = g.packed_neighborhoods()
    cdef int n = g.n
    cdef int words = packed.shape[1]
    cdef u64* nb = <u64*> packed.data
    cdef u64* covered = <u64*> malloc(words * sizeof(u64))
    cdef u64* inmask = <u64*> malloc(words * sizeof(u64))
    memset(covered, 0, words * sizeof(u64))
    memset(inmask, 0, words * sizeof(u64))
    members = list(partial)
    cdef int v, done
    for v in members:
        set_bit(inmask, v)
        or_into(covered, nb + v * words, words)
    done = _count_covered(covered, words, n) == n
    for v in order:
        if done:
            break
        if get_bit(inmask, v):
            continue
        members.append(v)
        set_bit(inmask, v)
        or_into(covered, nb + v * words, words)
        done = _count_covered(covered, words, n) == n
    free(covered)
    free(inmask)
    return members


def prune(g, members):
    cdef cnp.ndarray[u64, ndim=2] packed = g.packed_neighborhoods()
    cdef int n = g.n
    cdef int words = packed.shape[1]
    cdef u64* nb = <u64*> packed.data
    cdef cnp.ndarray[cnp.int32_t, ndim=1] cnt = np.zeros(n, dtype=np.int32)
    cdef int i, v, w, b, x
    cdef u64 word
    for v in members:
        for w in range(words):
            word = nb[v * words + w]
            while word:
                b = CTZ64(word)
                word &= word - 1
                cnt[(w << 6) + b] += 1
    keep = [True] * len(members)
    cdef bint removable
    for i in range(len(members) - 1, -1, -1):
        v = members[i]
        removable = True
        for w in range(words):
            word = nb[v * words + w]
            while word:
                b = CTZ64(word)
                word &= word - 1
                if cnt[(w << 6) + b] < 2:
                    removable = False
                    break
            if not removable:
                break
        if removable:
            keep[i] = False
            for w in range(words):
                word = nb[v * words + w]
                while word:
                    b = CTZ64(word)
                    word &= word - 1
                    cnt[(w << 6) + b] -= 1
    return [v for i, v in enumerate(members) if keep[i]]


def exchange_2_1(g, members):
    cdef cnp.ndarray[u64, ndim=2] packed = g.packed_neighborhoods()
    cdef int n = g.n
    cdef int words = packed.shape[1]
    cdef u64* nb = <u64*> packed.data
    cdef cnp.ndarray[cnp.int32_t, ndim=1] cnt = np.zeros(n, dtype=np.int32)
    cdef u64* inmask = <u64*> malloc(words * sizeof(u64))
    cdef u64* need = <u64*> malloc(words * sizeof(u64))
    memset(inmask, 0, words * sizeof(u64))
    members = list(members)
    cdef int i, j, v, u, w, b, x, m0, w_found, contrib
    cdef u64 word
    for v in members:
        set_bit(inmask, v)
        for w in range(words):
            word = nb[v * words + w]
            while word:
                b = CTZ64(word)
                word &= word - 1
                cnt[(w << 6) + b] += 1
    cdef bint improved = True
    cdef bint ok
    while improved:
        improved = False
        ordered = sorted(members)
        for i in range(len(ordered)):
            u = ordered[i]
            for j in range(i + 1, len(ordered)):
                v = ordered[j]
                memset(need, 0, words * sizeof(u64))
                ok = False  # any uncovered vertex found
                for w in range(words):
                    word = nb[u * words + w] | nb[v * words + w]
                    while word:
                        b = CTZ64(word)
                        word &= word - 1
                        x = (w << 6) + b
                        contrib = get_bit(nb + u * words, x) + get_bit(nb + v * words, x)
                        if cnt[x] == contrib:
                            set_bit(need, x)
                            ok = True
                if not ok:
                    continue
                m0 = -1
                for w in range(words):
                    if need[w]:
                        m0 = (w << 6) + CTZ64(need[w])
                        break
                w_found = -1
                for w in range(words):
                    word = nb[m0 * words + w]
                    while word:
                        b = CTZ64(word)
                        word &= word - 1
                        x = (w << 6) + b
                        if get_bit(inmask, x):
                            continue
                        if _superset(nb + x * words, need, words):
                            w_found = x
                            break
                    if w_found >= 0:
                        break
                if w_found < 0:
                    continue
                members = [m for m in members if m != u and m != v]
                members.append(w_found)
                inmask[u >> 6] &= ~(1ULL << (u & 63))
                inmask[v >> 6] &= ~(1ULL << (v & 63))
                set_bit(inmask, w_found)
                _adjust_counts(nb, cnt, u, words, -1)
                _adjust_counts(nb, cnt, v, words, -1)
                _adjust_counts(nb, cnt, w_found, words, 1)
                improved = True
                break
            if improved:
                break
    free(inmask)
    free(need)
    return members


cdef inline bint _superset(u64* big, u64* small, int words) nogil:
    cdef int i
    for i in range(words):
        if small[i] & ~big[i]:
            return False
    return True


cdef void _adjust_counts(u64* nb, cnp.int32_t[:] cnt, int v, int words, int delta) nogil:
    cdef int w, b
    cdef u64 word
    for w in range(words):
        word = nb[v * words + w]
        while word:
            b = CTZ64(word)
            word &= word - 1
            cnt[(w << 6) + b] += delta


cdef struct BnbState:
    u64* nb            # (n, words) closed neighborhoods
    u64* covered       # (n+2, words) per-depth
    u64* excluded      # (n+2, words)
    u64* smask         # (n+2, words)
    u64* forbidden     # (nf, words)
    int* s             # current member stack
    int* best          # best member list
    int* cand_buf      # (n+2, n) candidate scratch per depth
    int* cov_buf       # (n+2, n)
    int n
    int words
    int nf
    int best_size
    int best_len       # -1 until a solution is recorded
    long long nodes
    long long node_limit   # -1: unlimited
    double deadline        # monotonic seconds; <0: unlimited
    bint aborted


cdef inline bint _blocked(BnbState* st, u64* smask) nogil:
    cdef int f, w
    cdef bint sub
    for f in range(st.nf):
        sub = True
        for w in range(st.words):
            if st.forbidden[f * st.words + w] & ~smask[w]:
                sub = False
                break
        if sub:
            return True
    return False


cdef inline bint _blocked_with(BnbState* st, u64* smask, int extra) nogil:
    cdef int f, w, ew = extra >> 6
    cdef u64 ebit = 1ULL << (extra & 63)
    cdef bint sub
    for f in range(st.nf):
        sub = True
        for w in range(st.words):
            if st.forbidden[f * st.words + w] & ~(smask[w] | (ebit if w == ew else 0ULL)):
                sub = False
                break
        if sub:
            return True
    return False


cdef void _bnb_rec(BnbState* st, int depth, int s_len) noexcept:
    cdef int words = st.words
    cdef int n = st.n
    cdef u64* covered = st.covered + depth * words
    cdef u64* excluded = st.excluded + depth * words
    cdef u64* smask = st.smask + depth * words
    cdef u64* child_cov
    cdef u64* child_exc
    cdef u64* child_sm
    cdef int* cands = st.cand_buf + depth * n
    cdef int* covs = st.cov_buf + depth * n
    cdef int u, v, w, b, k, i, j, c
    cdef int forced, pick_u, best_k, n_cand
    cdef int uncov_count, maxcov
    cdef u64 word
    cdef int tmp_c, tmp_w

    st.nodes += 1
    if st.node_limit >= 0 and st.nodes > st.node_limit:
        st.aborted = True
        return
    if st.deadline >= 0 and (st.nodes & 1023) == 0:
        if time.monotonic() > st.deadline:
            st.aborted = True
            return

    # forced moves
    cdef bint full
    cdef bint have_pick
    while True:
        if _all_covered(covered, words, n):
            break
        forced = -1
        pick_u = -1
        best_k = n + 1
        have_pick = False
        for w in range(words):
            word = ~covered[w]
            if w == words - 1 and (n & 63):
                word &= (1ULL << (n & 63)) - 1
            while word:
                b = CTZ64(word)
                word &= word - 1
                u = (w << 6) + b
                k = 0
                for i in range(words):
                    k += POPCOUNT64(st.nb[u * words + i] & ~excluded[i])
                if k == 0:
                    return
                if k == 1:
                    forced = u
                    break
                if k < best_k:
                    best_k = k
                    pick_u = u
                    have_pick = True
            if forced >= 0:
                break
        if forced >= 0:
            # the single allowed coverer of `forced`
            v = -1
            for i in range(words):
                word = st.nb[forced * words + i] & ~excluded[i]
                if word:
                    v = (i << 6) + CTZ64(word)
                    break
            st.s[s_len] = v
            s_len += 1
            set_bit(smask, v)
            or_into(covered, st.nb + v * words, words)
            full = _all_covered(covered, words, n)
            if s_len >= st.best_size and not full:
                return
            if st.nf and _blocked(st, smask):
                return
            continue
        break

    if _all_covered(covered, words, n):
        if s_len < st.best_size and not (st.nf and _blocked(st, smask)):
            st.best_size = s_len
            st.best_len = s_len
            memcpy(st.best, st.s, s_len * sizeof(int))
        return

    # lower bound: fewest allowed vertices whose cover counts sum to the
    # number of undominated vertices (counting-sort prefix)
    uncov_count = n - _count_covered(covered, words, n)
    cdef int* buckets = st.cov_buf + depth * n  # reused scratch, size n >= maxdeg+2
    memset(buckets, 0, n * sizeof(int))
    for w in range(words):
        word = ~excluded[w]
        if w == words - 1 and (n & 63):
            word &= (1ULL << (n & 63)) - 1
        while word:
            b = CTZ64(word)
            word &= word - 1
            v = (w << 6) + b
            c = popcount_and_not(st.nb + v * words, covered, words)
            if c > 0:
                buckets[c - 1] += 1  # shifted by one: bucket[c-1] counts cover c
    cdef int need_cnt = uncov_count
    cdef int lb = 0
    cdef int take
    c = n - 1
    while c >= 0 and need_cnt > 0:
        if buckets[c]:
            take = (need_cnt + c) // (c + 1)  # ceil(need / cover)
            if take > buckets[c]:
                take = buckets[c]
            lb += take
            need_cnt -= take * (c + 1)
        c -= 1
    if s_len + lb >= st.best_size:
        return

    # branch candidates: allowed coverers of pick_u, desc coverage, asc id
    n_cand = 0
    for w in range(words):
        word = st.nb[pick_u * words + w] & ~excluded[w]
        while word:
            b = CTZ64(word)
            word &= word - 1
            v = (w << 6) + b
            cands[n_cand] = v
            covs[n_cand] = popcount_and_not(st.nb + v * words, covered, words)
            n_cand += 1
    # insertion sort by (-cov, id); cands are generated in ascending id order
    for i in range(1, n_cand):
        tmp_w = cands[i]
        tmp_c = covs[i]
        j = i - 1
        while j >= 0 and covs[j] < tmp_c:
            cands[j + 1] = cands[j]
            covs[j + 1] = covs[j]
            j -= 1
        cands[j + 1] = tmp_w
        covs[j + 1] = tmp_c

    child_cov = st.covered + (depth + 1) * words
    child_exc = st.excluded + (depth + 1) * words
    child_sm = st.smask + (depth + 1) * words
    memcpy(child_exc, excluded, words * sizeof(u64))
    for i in range(n_cand):
        if st.aborted:
            return
        v = cands[i]
        if not (st.nf and _blocked_with(st, smask, v)):
            memcpy(child_cov, covered, words * sizeof(u64))
            or_into(child_cov, st.nb + v * words, words)
            memcpy(child_sm, smask, words * sizeof(u64))
            set_bit(child_sm, v)
            st.s[s_len] = v
            _bnb_rec(st, depth + 1, s_len + 1)
            # child rows are scratch; re-copy excluded for the next sibling
            memcpy(child_exc, excluded, words * sizeof(u64))
        set_bit(child_exc, v)
        set_bit(excluded, v)


cdef inline bint _tail_full(u64 word, int n) nogil:
    if (n & 63) == 0:
        return word == 0xFFFFFFFFFFFFFFFFULL
    return word == (1ULL << (n & 63)) - 1


cdef inline bint _all_covered(u64* covered, int words, int n) nogil:
    cdef int w
    for w in range(words - 1):
        if covered[w] != 0xFFFFFFFFFFFFFFFFULL:
            return False
    return _tail_full(covered[words - 1], n)


def bnb(g, ub_size, forbidden_masks, node_limit=None, time_limit=None):
    cdef cnp.ndarray[u64, ndim=2] packed = g.packed_neighborhoods()
    cdef int n = g.n
    cdef int words = packed.shape[1]
    cdef int nf = len(forbidden_masks)
    cdef BnbState st
    st.nb = <u64*> packed.data
    st.n = n
    st.words = words
    st.nf = nf
    st.best_size = ub_size
    st.best_len = -1
    st.nodes = 0
    st.node_limit = node_limit if node_limit is not None else -1
    st.deadline = (time.monotonic() + time_limit) if time_limit is not None else -1.0
    st.aborted = False
    cdef int rows = n + 2
    st.covered = <u64*> malloc(rows * words * sizeof(u64))
    st.excluded = <u64*> malloc(rows * words * sizeof(u64))
    st.smask = <u64*> malloc(rows * words * sizeof(u64))
    st.s = <int*> malloc((n + 1) * sizeof(int))
    st.best = <int*> malloc((n + 1) * sizeof(int))
    st.cand_buf = <int*> malloc(rows * n * sizeof(int))
    st.cov_buf = <int*> malloc(rows * n * sizeof(int))
    st.forbidden = <u64*> malloc(max(nf, 1) * words * sizeof(u64))
    cdef int f, w
    cdef object mask
    for f in range(nf):
        mask = forbidden_masks[f]
        for w in range(words):
            st.forbidden[f * words + w] = <u64> ((mask >> (64 * w)) & 0xFFFFFFFFFFFFFFFF)
    memset(st.covered, 0, words * sizeof(u64))
    memset(st.excluded, 0, words * sizeof(u64))
    memset(st.smask, 0, words * sizeof(u64))
    try:
        _bnb_rec(&st, 0, 0)
        best = None
        if st.best_len >= 0:
            best = [st.best[i] for i in range(st.best_len)]
        return best, st.nodes, not st.aborted
    finally:
        free(st.covered)
        free(st.excluded)
        free(st.smask)
        free(st.s)
        free(st.best)
        free(st.cand_buf)
        free(st.cov_buf)
        free(st.forbidden)
