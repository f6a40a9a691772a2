"""Pure-Python kernels. Same signatures and results as the compiled ``_ckernels``.

Adjacency is a sequence of ``int`` bitmasks. Feasibility kinds are the
integer constants ``IS`` .. ``FOREST`` below.
"""

IS, IDS, MVC, PATH, TREE, FOREST = range(6)


def _popcount(x):
    return bin(x).count("1")


def _components(adj, s):
    comps = 0
    rest = s
    while rest:
        comps += 1
        frontier = rest & -rest
        seen = frontier
        while frontier:
            nb = 0
            f = frontier
            while f:
                low = f & -f
                nb |= adj[low.bit_length() - 1]
                f ^= low
            frontier = nb & s & ~seen
            seen |= frontier
        rest &= ~seen
    return comps


def feasible(adj, n, s, kind):
    full = (1 << n) - 1
    size = 0
    twice_edges = 0
    nb_union = 0
    maxdeg = 0
    f = s
    while f:
        low = f & -f
        a = adj[low.bit_length() - 1]
        d = _popcount(a & s)
        twice_edges += d
        if d > maxdeg:
            maxdeg = d
        nb_union |= a
        size += 1
        f ^= low
    if kind == IS:
        return twice_edges == 0
    if kind == IDS:
        return twice_edges == 0 and (s | nb_union) == full
    if kind == MVC:
        rest = full & ~s
        f = rest
        while f:
            low = f & -f
            if adj[low.bit_length() - 1] & rest:
                return False
            f ^= low
        f = s
        while f:
            low = f & -f
            if not adj[low.bit_length() - 1] & rest:
                return False
            f ^= low
        return True
    edges = twice_edges // 2
    if kind == FOREST:
        return edges == size - _components(adj, s)
    if size == 0 or edges != size - 1:
        return False
    if kind == PATH and maxdeg > 2:
        return False
    return _components(adj, s) == 1


def scan_subsets(adj, n, k, kind, maximize):
    """Check every subset of size <= k (size, then mask order).

    Returns ``(best_mask, count)``; ``best_mask`` is -1 when nothing is feasible.
    Minimisation keeps the first feasible subset met, maximisation the first
    one of largest size.
    """
    best = -1
    best_size = -1
    count = 0
    limit = 1 << n
    for size in range(0, k + 1):
        s = (1 << size) - 1
        while s < limit:
            count += 1
            if (best < 0 or (maximize and size > best_size)) and feasible(adj, n, s, kind):
                best = s
                best_size = size
            if size == 0:
                break
            c = s & -s
            r = s + c
            s = (((r ^ s) >> 2) // c) | r
    return best, count


def held_karp(dist):
    """Optimal closed tour from city 0. Returns ``(cost, order)``."""
    n = len(dist)
    if n == 0:
        return 0, []
    if n == 1:
        return 0, [0]
    # cities 1..n-1 are tracked in a mask over n-1 bits
    m = n - 1
    size = 1 << m
    inf = float("inf")
    cost = [[inf] * m for _ in range(size)]
    parent = [[-1] * m for _ in range(size)]
    for j in range(m):
        cost[1 << j][j] = dist[0][j + 1]
    for mask in range(1, size):
        row = cost[mask]
        for j in range(m):
            cj = row[j]
            if cj == inf or not mask >> j & 1:
                continue
            dj = dist[j + 1]
            free = (size - 1) & ~mask
            while free:
                low = free & -free
                t = low.bit_length() - 1
                nxt = mask | low
                c = cj + dj[t + 1]
                if c < cost[nxt][t]:
                    cost[nxt][t] = c
                    parent[nxt][t] = j
                free ^= low
    full = size - 1
    best = inf
    last = -1
    for j in range(m):
        c = cost[full][j] + dist[j + 1][0]
        if c < best:
            best = c
            last = j
    order = []
    mask = full
    while last >= 0:
        order.append(last + 1)
        prev = parent[mask][last]
        mask ^= 1 << last
        last = prev
    order.append(0)
    order.reverse()
    return best, order


def _maximal_independent_sets(adj, s, out):
    # Bron-Kerbosch with pivoting on the complement of G[s]
    nn = {}
    f = s
    while f:
        low = f & -f
        v = low.bit_length() - 1
        nn[v] = s & ~adj[v] & ~low
        f ^= low

    def bk(r, p, x):
        if not p and not x:
            out.append(r)
            return
        pivot = -1
        best = -1
        f = p | x
        while f:
            low = f & -f
            u = low.bit_length() - 1
            c = _popcount(p & nn[u])
            if c > best:
                best = c
                pivot = u
            f ^= low
        cand = p & ~nn[pivot]
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            bk(r | low, p & nn[v], x & nn[v])
            p &= ~low
            x |= low
            cand ^= low

    bk(0, s, 0)


def grundy(adj, n):
    """Grundy number, witness partition ``[C_1, ..., C_k]`` of all vertices, memo states."""
    memo = {0: (0, 0)}

    def solve(s):
        hit = memo.get(s)
        if hit is not None:
            return hit[0]
        # Gamma(S) <= 1 + max degree in G[S] and <= |S|
        ub = 0
        f = s
        while f:
            low = f & -f
            d = _popcount(adj[low.bit_length() - 1] & s)
            if d > ub:
                ub = d
            f ^= low
        ub += 1
        mis = []
        _maximal_independent_sets(adj, s, mis)
        best = -1
        choice = 0
        for m in mis:
            val = 1 + solve(s & ~m)
            if val > best:
                best = val
                choice = m
                if best == ub:
                    break
        memo[s] = (best, choice)
        return best

    k = solve((1 << n) - 1)
    classes = []
    s = (1 << n) - 1
    while s:
        m = memo[s][1]
        classes.append(m)
        s &= ~m
    return k, classes, len(memo) - 1


def max_independent_set(adj, n):
    """Maximum independent set by branching on a highest-degree vertex.

    Ties between optimal sets go to the smallest bitmask. Returns
    ``(size, mask, nodes)``.
    """
    best = [0, 0, 0]  # size, mask, search nodes

    def rec(cur, csize, avail):
        best[2] += 1
        asize = _popcount(avail)
        ub = csize + asize
        if ub < best[0]:
            return
        # a tie needs every available vertex, so only cur | avail can still win
        if ub == best[0] and (cur | avail) >= best[1]:
            return
        pick = -1
        pick_deg = -1
        f = avail
        while f:
            low = f & -f
            v = low.bit_length() - 1
            d = _popcount(adj[v] & avail)
            if d > pick_deg:
                pick_deg = d
                pick = v
            f ^= low
        if pick_deg <= 0:
            total = cur | avail
            if ub > best[0] or (ub == best[0] and total < best[1]):
                best[0] = ub
                best[1] = total
            return
        bit = 1 << pick
        rec(cur | bit, csize + 1, avail & ~adj[pick] & ~bit)
        rec(cur, csize, avail & ~bit)

    rec(0, 0, (1 << n) - 1)
    return best[0], best[1], best[2]
