"""Exact bounded longest-path detection."""

from collections import deque

from ..errors import PatternTooLarge

MAX_PATH_EDGES = 12


def _bfs_far(adj, src, allowed=None):
    parent = {src: None}
    queue = deque([src])
    last = src
    while queue:
        x = queue.popleft()
        last = x
        for y in adj[x]:
            if y not in parent and (allowed is None or y in allowed):
                parent[y] = x
                queue.append(y)
    path = []
    x = last
    while x is not None:
        path.append(x)
        x = parent[x]
    return path  # from far vertex back to src


def _tree_longest(adj, comp):
    far = _bfs_far(adj, comp[0])[0]
    return _bfs_far(adj, far)


def _reach(adj, start, blocked, limit):
    """Count vertices reachable from ``start`` avoiding ``blocked``, stopping at ``limit``."""
    seen = {start}
    stack = [start]
    while stack and len(seen) < limit:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen and y not in blocked:
                seen.add(y)
                stack.append(y)
    return len(seen) - 1


def _dfs_path(adj, comp, k):
    """Search a path with ``k`` edges inside one component by DFS from every vertex."""
    path = []
    on_path = set()

    def extend(x):
        if len(path) == k + 1:
            return True
        need = k + 1 - len(path)
        if _reach(adj, x, on_path, need + 1) < need:
            return False
        for y in sorted(adj[x], key=lambda w: len(adj[w])):
            if y not in on_path:
                path.append(y)
                on_path.add(y)
                if extend(y):
                    return True
                path.pop()
                on_path.discard(y)
        return False

    for s in sorted(comp, key=lambda w: len(adj[w])):
        path[:] = [s]
        on_path.clear()
        on_path.add(s)
        if extend(s):
            return list(path)
    return None


def find_path(G, k):
    """A path with exactly ``k`` edges in ``G`` as a vertex list, or None."""
    if k > MAX_PATH_EDGES:
        raise PatternTooLarge(f"path search limited to {MAX_PATH_EDGES} edges, asked {k}")
    if k < 0:
        raise ValueError("k must be non-negative")
    if G.n == 0:
        return None
    if k == 0:
        return [0]
    adj = G.adj
    for comp in G.components():
        if len(comp) < k + 1:
            continue
        m = sum(len(adj[v]) for v in comp) // 2
        if m < k:
            continue
        if m == len(comp) - 1:
            longest = _tree_longest(adj, comp)
            if len(longest) >= k + 1:
                return longest[: k + 1]
            continue
        found = _dfs_path(adj, comp, k)
        if found is not None:
            return found
    return None


def longest_path_at_least(G, k):
    """True iff ``G`` contains a path with at least ``k`` edges."""
    return find_path(G, k) is not None
