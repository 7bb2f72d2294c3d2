import math
from collections import deque

from ..errors import InvalidConfig
from .sparse import SparseGraph


def default_degree_cap(n):
    """Natural-log degree cap, rounded up."""
    return math.ceil(math.log(n))


def _within(adj, src, dst, limit):
    """True iff ``dst`` is at distance <= ``limit`` from ``src``."""
    if limit < 1:
        return False
    dist = {src: 0}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        d = dist[x]
        if d == limit:
            continue
        for y in adj[x]:
            if y == dst:
                return True
            if y not in dist:
                dist[y] = d + 1
                queue.append(y)
    return False


def mprime_filter(transcript, ell, cap=None, edges=None):
    """Replay Maker's edges in claim order and keep those that respect the filter.

    An edge is rejected when either endpoint already has degree ``cap`` in the
    filtered graph, or when adding it would close a cycle shorter than ``ell``.
    ``ell`` may be ``math.inf`` (reject every cycle). ``edges`` overrides the
    transcript's Maker edge sequence; ``transcript`` then only supplies ``n``.
    """
    if ell < 3:
        raise InvalidConfig(f"girth target must be >= 3, got {ell}")
    n = transcript.n
    if cap is None:
        cap = default_degree_cap(n)
    seq = transcript.maker_edges if edges is None else edges
    out = SparseGraph(n)
    adj = out.adj
    if math.isinf(ell):
        root = list(range(n))

        def find(x):
            while root[x] != x:
                root[x] = root[root[x]]
                x = root[x]
            return x

    for u, v in seq:
        if len(adj[u]) >= cap or len(adj[v]) >= cap:
            continue
        if math.isinf(ell):
            ru, rv = find(u), find(v)
            if ru == rv:
                continue
            root[ru] = rv
        elif _within(adj, u, v, ell - 2):
            continue
        out.add_edge(u, v)
    return out
