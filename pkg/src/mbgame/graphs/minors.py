"""Exact minor and topological-minor containment for small patterns.

Both searches are exponential in the pattern and are meant for patterns of at
most ten (minor) or eight (subdivision) vertices. For a connected pattern the
host is split into components first, which is what keeps the engine's
after-every-move checks cheap: Maker's graph is usually a forest of small
pieces.
"""

from dataclasses import dataclass

from ..errors import PatternTooLarge
from .matching import maximum_matching
from .paths import MAX_PATH_EDGES, find_path

MAX_MINOR_K = 10
MAX_TOPOLOGICAL_K = 8


@dataclass(frozen=True)
class MinorEmbedding:
    """Branch sets ``pattern vertex -> frozenset of host vertices``."""

    branch_sets: dict

    def __getitem__(self, v):
        return self.branch_sets[v]

    def __len__(self):
        return len(self.branch_sets)

    def used_vertices(self):
        return frozenset().union(*self.branch_sets.values()) if self.branch_sets else frozenset()


def embedding_errors(G, H, emb):
    """List every way ``emb`` fails to witness ``H`` as a minor of ``G`` (empty if valid)."""
    errors = []
    sets = emb.branch_sets if isinstance(emb, MinorEmbedding) else emb
    if set(sets) != set(range(H.k)):
        errors.append("branch sets do not cover the pattern vertices")
        return errors
    seen = {}
    for p, S in sets.items():
        if not S:
            errors.append(f"branch set of {p} is empty")
            continue
        for x in S:
            if not 0 <= x < G.n:
                errors.append(f"vertex {x} outside host")
            elif x in seen:
                errors.append(f"vertex {x} in branch sets of {seen[x]} and {p}")
            else:
                seen[x] = p
        start = next(iter(S))
        reach = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in G.adj[x] if 0 <= x < G.n else ():
                if y in S and y not in reach:
                    reach.add(y)
                    stack.append(y)
        if reach != set(S):
            errors.append(f"branch set of {p} is not connected")
    for a, b in H.edges:
        if not any(y in sets[b] for x in sets[a] if 0 <= x < G.n for y in G.adj[x]):
            errors.append(f"no host edge between branch sets of {a} and {b}")
    return errors


def is_valid_embedding(G, H, emb):
    return not embedding_errors(G, H, emb)


# -- search helpers ---------------------------------------------------------------


def _pattern_order(H):
    """Descending degree, each next vertex preferring the most already-placed neighbours."""
    adj = H.adjacency
    placed = []
    left = set(range(H.k))
    while left:
        best = max(
            left,
            key=lambda v: (sum(1 for w in adj[v] if w not in left), len(adj[v]), -v),
        )
        placed.append(best)
        left.remove(best)
    return placed


def _connected_sets(adj, seeds, forbidden, max_size):
    """Yield every connected vertex set containing a seed, smallest sets first.

    Uses the ESU extension scheme: each set is produced once, rooted at the
    first seed (in ``seeds`` order) that it contains.
    """
    for size in range(1, max_size + 1):
        produced = False
        for idx, root in enumerate(seeds):
            excluded = set(forbidden)
            excluded.update(seeds[:idx])
            excluded.add(root)
            closed = {root} | adj[root]
            ext = [u for u in adj[root] if u not in excluded]
            for S in _esu_extend(adj, [root], ext, closed, excluded, size):
                produced = True
                yield S
        if not produced:
            return


def _esu_extend(adj, sub, ext, closed, excluded, size):
    if len(sub) == size:
        yield frozenset(sub)
        return
    ext = list(ext)
    while ext:
        w = ext.pop()
        fresh = [u for u in adj[w] if u not in closed and u not in excluded]
        yield from _esu_extend(adj, sub + [w], ext + fresh, closed | adj[w], excluded, size)


def _branch_set_search(adj, H):
    n = len(adj)
    hadj = H.adjacency
    order = _pattern_order(H)
    k = H.k
    assigned = {}
    used = set()

    def outside(S):
        out = set()
        for x in S:
            out |= adj[x]
        out -= used
        return out

    def viable():
        for q, S in assigned.items():
            if any(w not in assigned for w in hadj[q]) and not outside(S):
                return False
        return True

    def place(i):
        if i == k:
            return True
        p = order[i]
        placed = [q for q in hadj[p] if q in assigned]
        max_size = n - len(used) - (k - i - 1)
        if max_size < 1:
            return False
        touch = [outside(assigned[q]) for q in placed]
        if touch:
            seeds = sorted(min(touch, key=len))
            if not seeds:
                return False
        else:
            seeds = [v for v in range(n) if v not in used]
        for S in _connected_sets(adj, seeds, used, max_size):
            if not all(S & T for T in touch):
                continue
            assigned[p] = S
            used.update(S)
            if viable() and place(i + 1):
                return True
            del assigned[p]
            used.difference_update(S)
        return False

    if place(0):
        return dict(assigned)
    return None


def _simple_paths(adj, start, used, targets=None):
    """Yield simple paths from ``start`` whose other vertices avoid ``used``.

    With ``targets`` only paths ending in a target are yielded and targets are
    never passed through.
    """
    path = [start]
    on = {start}

    def walk(x):
        for y in sorted(adj[x]):
            if y in on:
                continue
            if targets is not None and y in targets:
                yield path + [y]
                continue
            if y in used:
                continue
            path.append(y)
            on.add(y)
            if targets is None:
                yield list(path)
            yield from walk(y)
            path.pop()
            on.discard(y)

    yield from walk(start)


def _topological_search(adj, H):
    """Find a subdivision of ``H``; returns (images, edge paths) or None."""
    n = len(adj)
    hadj = H.adjacency
    order = _pattern_order(H)
    k = H.k
    image = {}
    used = set()
    routes = {}

    def route(pending, p, i):
        if not pending:
            return place(i + 1)
        q = pending[0]
        for P in _simple_paths(adj, image[q], used, targets={image[p]}):
            inner = P[1:-1]
            used.update(inner)
            routes[(q, p)] = P
            if route(pending[1:], p, i):
                return True
            used.difference_update(inner)
            del routes[(q, p)]
        return False

    def place(i):
        if i == k:
            return True
        p = order[i]
        need = len(hadj[p])
        placed = [q for q in hadj[p] if q in image]
        if not placed:
            for c in range(n):
                if c in used or len(adj[c]) < need:
                    continue
                image[p] = c
                used.add(c)
                if place(i + 1):
                    return True
                del image[p]
                used.discard(c)
            return False
        q0 = placed[0]
        for P in _simple_paths(adj, image[q0], used):
            end = P[-1]
            if len(adj[end]) < need:
                continue
            used.update(P[1:])
            image[p] = end
            routes[(q0, p)] = P
            if route(placed[1:], p, i):
                return True
            used.difference_update(P[1:])
            del image[p]
            del routes[(q0, p)]
        return False

    if place(0):
        return dict(image), dict(routes)
    return None


def _subdivision_to_branch_sets(found):
    image, routes = found
    sets = {p: {c} for p, c in image.items()}
    for (q, _p), P in routes.items():
        sets[q].update(P[1:-1])
    return {p: frozenset(S) for p, S in sets.items()}


def _per_component(G, H, search):
    """Run ``search(adj, H)`` on each component big enough for connected ``H``."""
    for comp in G.components():
        if len(comp) < H.k:
            continue
        if sum(len(G.adj[v]) for v in comp) // 2 < H.num_edges:
            continue
        sub, labels = G.induced(comp)
        found = search(sub.adj, H)
        if found is not None:
            return found, labels
    return None, None


def _relabel(sets, labels):
    return {p: frozenset(labels[x] for x in S) for p, S in sets.items()}


def _fill_isolated(G, H, core_sets, core_labels):
    """Extend an embedding of H's non-isolated part with fresh vertices for isolated ones."""
    sets = {core_labels[i]: S for i, S in core_sets.items()}
    used = set().union(*sets.values()) if sets else set()
    spare = (v for v in range(G.n) if v not in used)
    for p in H.isolated_vertices():
        v = next(spare, None)
        if v is None:
            return None
        sets[p] = frozenset([v])
    return sets


# -- public detectors ----------------------------------------------------------------


def _minor_core(G, H):
    """Embedding of a pattern without isolated vertices, as branch sets, or None."""
    if H.is_matching():
        m = maximum_matching(G, stop_at=H.num_edges)
        if len(m) < H.num_edges:
            return None
        sets = {}
        for (a, b), (x, y) in zip(H.edges, m):
            sets[a] = frozenset([x])
            sets[b] = frozenset([y])
        return sets
    order = H.path_order()
    if order is not None:
        P = find_path(G, H.k - 1)
        if P is None:
            return None
        return {p: frozenset([x]) for p, x in zip(order, P)}
    if H.max_degree <= 3:

        def search(adj, pattern):
            found = _topological_search(adj, pattern)
            return None if found is None else _subdivision_to_branch_sets(found)

    else:
        search = _branch_set_search
    if H.is_connected:
        found, labels = _per_component(G, H, search)
        return None if found is None else _relabel(found, labels)
    active = [v for v in range(G.n) if G.adj[v]]
    sub, labels = G.induced(active)
    found = search(sub.adj, H)
    return None if found is None else _relabel(found, labels)


def _has_direct_route(H):
    """Paths (up to the path detector's limit) and matchings avoid the general search."""
    core = H.without_isolated()
    if core is None:
        return True
    if core.is_matching():
        return True
    return core.path_order() is not None and core.num_edges <= MAX_PATH_EDGES


def has_minor(G, H):
    """Return a :class:`MinorEmbedding` of ``H`` in ``G`` or None.

    General patterns are limited to ``MAX_MINOR_K`` vertices. Matchings and
    paths with at most ``MAX_PATH_EDGES`` edges go through exact dedicated
    detectors and are not subject to that limit.
    """
    if H.k > MAX_MINOR_K and not _has_direct_route(H):
        raise PatternTooLarge(f"minor search limited to {MAX_MINOR_K} pattern vertices")
    if G.n < H.k:
        return None
    if H.num_edges == 0:
        return MinorEmbedding({p: frozenset([p]) for p in range(H.k)})
    isolated = H.isolated_vertices()
    core = H.without_isolated() if isolated else H
    core_labels = [v for v in range(H.k) if H.adjacency[v]]
    core_sets = _minor_core(G, core)
    if core_sets is None:
        return None
    sets = _fill_isolated(G, H, core_sets, core_labels)
    if sets is None:
        # too few spare host vertices for the isolated pattern vertices: search H whole
        sets = _branch_set_search(G.adj, H)
    return None if sets is None else MinorEmbedding(sets)


def find_subdivision(G, H):
    """Images and edge paths of a subdivision of ``H`` in ``G``, or None."""
    if H.k > MAX_TOPOLOGICAL_K:
        raise PatternTooLarge(f"subdivision search limited to {MAX_TOPOLOGICAL_K} pattern vertices")
    if G.n < H.k:
        return None
    if H.is_connected and H.num_edges:
        found, labels = _per_component(G, H, _topological_search)
        if found is None:
            return None
        image, routes = found
        return (
            {p: labels[c] for p, c in image.items()},
            {e: [labels[x] for x in P] for e, P in routes.items()},
        )
    return _topological_search(G.adj, H)


def has_topological_minor(G, H):
    """True iff some subdivision of ``H`` is a subgraph of ``G``."""
    if H.k > MAX_TOPOLOGICAL_K:
        raise PatternTooLarge(f"subdivision search limited to {MAX_TOPOLOGICAL_K} pattern vertices")
    if H.max_degree <= 3:
        return has_minor(G, H) is not None
    return find_subdivision(G, H) is not None
