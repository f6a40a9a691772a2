# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled kernels mirroring ``_pykernels`` for graphs with at most 64 vertices."""

from libc.stdint cimport uint64_t, int64_t, int8_t, int32_t
from libc.stdlib cimport malloc, calloc, free
from libcpp.vector cimport vector

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

cdef enum:
    IS = 0
    IDS = 1
    MVC = 2
    PATH = 3
    TREE = 4
    FOREST = 5

MAX_N = 64


cdef inline int popc(uint64_t x) nogil:
    return __builtin_popcountll(x)


cdef inline int ctz(uint64_t x) nogil:
    return __builtin_ctzll(x)


cdef inline uint64_t full_of(int n) nogil:
    if n >= 64:
        return <uint64_t>0xFFFFFFFFFFFFFFFF
    return ((<uint64_t>1) << n) - 1


cdef uint64_t* load_adj(adj, int n) except NULL:
    if n > 64:
        raise ValueError("compiled kernels handle at most 64 vertices")
    cdef uint64_t* a = <uint64_t*> malloc(max(n, 1) * sizeof(uint64_t))
    cdef int i
    for i in range(n):
        a[i] = <uint64_t> adj[i]
    return a


cdef int components(const uint64_t* adj, uint64_t s) nogil:
    cdef int comps = 0
    cdef uint64_t rest = s, frontier, seen, nb, f
    while rest:
        comps += 1
        frontier = rest & (~rest + 1)
        seen = frontier
        while frontier:
            nb = 0
            f = frontier
            while f:
                nb |= adj[ctz(f)]
                f &= f - 1
            frontier = nb & s & ~seen
            seen |= frontier
        rest &= ~seen
    return comps


cdef bint feasible_c(const uint64_t* adj, int n, uint64_t s, int kind) nogil:
    cdef uint64_t full = full_of(n)
    cdef int size = 0, twice_edges = 0, maxdeg = 0, d
    cdef uint64_t nb_union = 0, f = s, a, rest
    while f:
        a = adj[ctz(f)]
        d = popc(a & s)
        twice_edges += d
        if d > maxdeg:
            maxdeg = d
        nb_union |= a
        size += 1
        f &= f - 1
    if kind == IS:
        return twice_edges == 0
    if kind == IDS:
        return twice_edges == 0 and (s | nb_union) == full
    if kind == MVC:
        rest = full & ~s
        f = rest
        while f:
            if adj[ctz(f)] & rest:
                return False
            f &= f - 1
        f = s
        while f:
            if not (adj[ctz(f)] & rest):
                return False
            f &= f - 1
        return True
    cdef int edges = twice_edges // 2
    if kind == FOREST:
        return edges == size - components(adj, s)
    if size == 0 or edges != size - 1:
        return False
    if kind == PATH and maxdeg > 2:
        return False
    return components(adj, s) == 1


def feasible(adj, int n, s, int kind):
    cdef uint64_t* a = load_adj(adj, n)
    try:
        return bool(feasible_c(a, n, <uint64_t> s, kind))
    finally:
        free(a)


def scan_subsets(adj, int n, int k, int kind, bint maximize):
    """Check every subset of size <= k (size, then mask order); returns ``(best_mask, count)``."""
    cdef uint64_t* a = load_adj(adj, n)
    cdef uint64_t s, c, r, best = 0
    cdef bint found = False
    cdef int size, best_size = -1
    cdef int64_t count = 0
    cdef bint top = n == 64
    try:
        with nogil:
            for size in range(0, k + 1):
                s = ((<uint64_t>1) << size) - 1 if size < 64 else <uint64_t>0xFFFFFFFFFFFFFFFF
                while True:
                    count += 1
                    if (not found or (maximize and size > best_size)) and feasible_c(a, n, s, kind):
                        best = s
                        best_size = size
                        found = True
                    if size == 0:
                        break
                    c = s & (~s + 1)
                    r = s + c
                    # overflow past bit n-1 ends this size class
                    if (not top and (r >> n)) or r == 0:
                        break
                    s = (((r ^ s) >> 2) // c) | r
        if not found:
            return -1, count
        return int(best), count
    finally:
        free(a)


def held_karp(dist):
    """Optimal closed tour from city 0. Returns ``(cost, order)``."""
    cdef int n = len(dist)
    if n == 0:
        return 0, []
    if n == 1:
        return 0, [0]
    if n > 31:
        raise ValueError("held_karp kernel supports at most 31 cities")
    cdef int m = n - 1
    cdef int64_t size = (<int64_t>1) << m
    cdef double* d = <double*> malloc(n * n * sizeof(double))
    cdef double* cost = <double*> malloc(size * m * sizeof(double))
    cdef int8_t* parent = <int8_t*> malloc(size * m * sizeof(int8_t))
    if d == NULL or cost == NULL or parent == NULL:
        free(d); free(cost); free(parent)
        raise MemoryError()
    cdef int i, j, t, last
    cdef int64_t mask, nxt, idx, free_bits
    cdef double cj, c, best
    cdef double inf = float("inf")
    try:
        for i in range(n):
            row = dist[i]
            for j in range(n):
                d[i * n + j] = <double> row[j]
        with nogil:
            for idx in range(size * m):
                cost[idx] = inf
                parent[idx] = -1
            for j in range(m):
                cost[((<int64_t>1) << j) * m + j] = d[j + 1]
            for mask in range(1, size):
                for j in range(m):
                    cj = cost[mask * m + j]
                    if cj == inf or not ((mask >> j) & 1):
                        continue
                    free_bits = (size - 1) & ~mask
                    while free_bits:
                        t = ctz(<uint64_t> free_bits)
                        nxt = mask | ((<int64_t>1) << t)
                        c = cj + d[(j + 1) * n + t + 1]
                        if c < cost[nxt * m + t]:
                            cost[nxt * m + t] = c
                            parent[nxt * m + t] = <int8_t> j
                        free_bits &= free_bits - 1
            best = inf
            last = -1
            mask = size - 1
            for j in range(m):
                c = cost[mask * m + j] + d[(j + 1) * n]
                if c < best:
                    best = c
                    last = j
        order = []
        mask = size - 1
        while last >= 0:
            order.append(last + 1)
            t = parent[mask * m + last]
            mask ^= (<int64_t>1) << last
            last = t
        order.append(0)
        order.reverse()
        return best, order
    finally:
        free(d)
        free(cost)
        free(parent)


cdef void bk(uint64_t r, uint64_t p, uint64_t x, const uint64_t* nn, vector[uint64_t]& out) nogil:
    if p == 0 and x == 0:
        out.push_back(r)
        return
    cdef int pivot = -1, best = -1, c, u, v
    cdef uint64_t f = p | x, cand, low
    while f:
        u = ctz(f)
        c = popc(p & nn[u])
        if c > best:
            best = c
            pivot = u
        f &= f - 1
    cand = p & ~nn[pivot]
    while cand:
        low = cand & (~cand + 1)
        v = ctz(cand)
        bk(r | low, p & nn[v], x & nn[v], nn, out)
        p &= ~low
        x |= low
        cand ^= low


cdef struct GrundyState:
    const uint64_t* adj
    int64_t states
    int8_t* value
    uint64_t* choice


cdef int grundy_solve(GrundyState* st, uint64_t s) nogil:
    if st.value[s] >= 0:
        return st.value[s]
    cdef uint64_t nn[64]
    cdef uint64_t f = s, low
    cdef int v, d, ub = 0, best = -1, val
    cdef uint64_t choice = 0
    while f:
        v = ctz(f)
        low = (<uint64_t>1) << v
        d = popc(st.adj[v] & s)
        if d > ub:
            ub = d
        nn[v] = s & ~st.adj[v] & ~low
        f &= f - 1
    ub += 1
    cdef vector[uint64_t] mis
    bk(0, s, 0, nn, mis)
    cdef size_t i
    for i in range(mis.size()):
        val = 1 + grundy_solve(st, s & ~mis[i])
        if val > best:
            best = val
            choice = mis[i]
            if best == ub:
                break
    st.value[s] = <int8_t> best
    st.choice[s] = choice
    st.states += 1
    return best


def grundy(adj, int n):
    """Grundy number, witness partition ``[C_1, ..., C_k]`` of all vertices, memo states."""
    if n > 30:
        raise ValueError("grundy kernel supports at most 30 vertices")
    cdef uint64_t* a = load_adj(adj, n)
    cdef int64_t size = (<int64_t>1) << n
    cdef int8_t* value = <int8_t*> malloc(size * sizeof(int8_t))
    cdef uint64_t* choice = <uint64_t*> calloc(size, sizeof(uint64_t))
    cdef GrundyState st
    cdef int64_t i
    cdef int k
    cdef uint64_t s, mset
    if value == NULL or choice == NULL:
        free(a); free(value); free(choice)
        raise MemoryError()
    try:
        for i in range(size):
            value[i] = -1
        value[0] = 0
        st.adj = a
        st.value = value
        st.choice = choice
        st.states = 0
        with nogil:
            k = grundy_solve(&st, full_of(n))
        classes = []
        s = full_of(n)
        while s:
            mset = choice[s]
            classes.append(int(mset))
            s &= ~mset
        return k, classes, st.states
    finally:
        free(a)
        free(value)
        free(choice)


cdef struct MisState:
    const uint64_t* adj
    int best_size
    uint64_t best_mask
    int64_t nodes


cdef void mis_rec(MisState* st, uint64_t cur, int csize, uint64_t avail) nogil:
    st.nodes += 1
    cdef int ub = csize + popc(avail)
    if ub < st.best_size:
        return
    if ub == st.best_size and (cur | avail) >= st.best_mask:
        return
    cdef int pick = -1, pick_deg = -1, d, v
    cdef uint64_t f = avail, total, bit
    while f:
        v = ctz(f)
        d = popc(st.adj[v] & avail)
        if d > pick_deg:
            pick_deg = d
            pick = v
        f &= f - 1
    if pick_deg <= 0:
        total = cur | avail
        if ub > st.best_size or (ub == st.best_size and total < st.best_mask):
            st.best_size = ub
            st.best_mask = total
        return
    bit = (<uint64_t>1) << pick
    mis_rec(st, cur | bit, csize + 1, avail & ~st.adj[pick] & ~bit)
    mis_rec(st, cur, csize, avail & ~bit)


def max_independent_set(adj, int n):
    """Maximum independent set; ties go to the smallest bitmask."""
    cdef uint64_t* a = load_adj(adj, n)
    cdef MisState st
    st.adj = a
    st.best_size = 0
    st.best_mask = 0
    st.nodes = 0
    try:
        with nogil:
            mis_rec(&st, 0, 0, full_of(n))
        return st.best_size, int(st.best_mask), st.nodes
    finally:
        free(a)
