import math
from collections import deque
from fractions import Fraction
from itertools import combinations

from ..errors import Undefined


def girth(G):
    """Length of a shortest cycle, ``math.inf`` for forests."""
    best = math.inf
    adj = G.adj
    for root in range(G.n):
        if not adj[root]:
            continue
        dist = {root: 0}
        parent = {root: None}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            if 2 * dist[x] + 1 >= best:
                break
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


def average_degree(G):
    if G.n < 1:
        raise ValueError("average degree of the empty vertex set")
    return Fraction(2 * G.num_edges, G.n)


def m2_density(H):
    """2-density: max over vertex subsets U, |U| >= 3, of (e(H[U]) - 1) / (|U| - 2)."""
    if H.k < 3:
        raise Undefined(f"{H} has fewer than three vertices")
    adj = H.adjacency
    best = None
    for size in range(3, H.k + 1):
        for U in combinations(range(H.k), size):
            inside = set(U)
            e = sum(1 for u in U for w in adj[u] if w in inside) // 2
            value = Fraction(e - 1, size - 2)
            if best is None or value > best:
                best = value
    return best
