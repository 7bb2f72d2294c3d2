"""Maximum cardinality matching in general graphs (Edmonds' blossom algorithm)."""

from collections import deque


def _augment_from(adj, match, root):
    n = len(adj)
    used = [False] * n
    parent = [-1] * n
    base = list(range(n))
    used[root] = True
    queue = deque([root])

    def lca(a, b):
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[match[b]]

    def mark_path(v, b, child, blossom):
        while base[v] != b:
            blossom[base[v]] = blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    while queue:
        v = queue.popleft()
        for to in adj[v]:
            if base[v] == base[to] or match[v] == to:
                continue
            if to == root or (match[to] != -1 and parent[match[to]] != -1):
                b = lca(v, to)
                blossom = [False] * n
                mark_path(v, b, to, blossom)
                mark_path(to, b, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = b
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if match[to] == -1:
                    x = to
                    while x != -1:
                        px = parent[x]
                        nxt = match[px]
                        match[x] = px
                        match[px] = x
                        x = nxt
                    return True
                used[match[to]] = True
                queue.append(match[to])
    return False


def maximum_matching(G, stop_at=None):
    """Return a maximum matching of ``G`` as a list of edges.

    With ``stop_at`` the search ends as soon as that many edges are matched,
    which is all a threshold decision needs.
    """
    active = [v for v in range(G.n) if G.adj[v]]
    index = {v: i for i, v in enumerate(active)}
    adj = [[index[w] for w in sorted(G.adj[v])] for v in active]
    match = [-1] * len(active)
    size = 0
    for u in range(len(active)):
        if match[u] == -1:
            for w in adj[u]:
                if match[w] == -1:
                    match[u], match[w] = w, u
                    size += 1
                    break
    for root in range(len(active)):
        if stop_at is not None and size >= stop_at:
            break
        if match[root] == -1 and _augment_from(adj, match, root):
            size += 1
    return [(active[u], active[w]) for u, w in enumerate(match) if w > u]


def matching_number(G):
    return len(maximum_matching(G))


def matching_at_least(G, m):
    """True iff ``G`` has a matching with ``m`` edges."""
    if m <= 0:
        return True
    if 2 * m > G.n or m > G.num_edges:
        return False
    return len(maximum_matching(G, stop_at=m)) >= m
