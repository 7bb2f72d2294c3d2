"""Win conditions for Maker: ``minor:H``, ``subdivision:H``, ``matching:m`` or ``none``.

Every target is monotone (adding Maker edges never destroys it), so the engine
only re-tests after Maker moves and, for connected patterns, only inside the
component that received the new edge.
"""

from .errors import InvalidConfig
from .graphs.matching import matching_at_least
from .graphs.minors import has_minor, has_topological_minor
from .graphs.patterns import parse_pattern
from .graphs.sparse import SparseGraph


def component_graph(adj, vertices):
    """Subgraph of the adjacency list ``adj`` induced on ``vertices``, relabelled."""
    labels = sorted(vertices)
    index = {v: i for i, v in enumerate(labels)}
    g = SparseGraph(len(labels))
    for v in labels:
        i = index[v]
        for w in adj[v]:
            j = index.get(w)
            if j is not None and i < j:
                g.add_edge(i, j)
    return g


def _component(adj, v):
    seen = {v}
    stack = [v]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _active(adj):
    return [v for v in range(len(adj)) if adj[v]]


class Target:
    spec = "none"

    def holds(self, graph):
        """Evaluate on a whole :class:`SparseGraph`."""
        return False

    def check_after(self, board, edge):
        """Re-evaluate after Maker claimed ``edge`` (a vertex pair) on ``board``."""
        return False

    def __str__(self):
        return self.spec


class NoTarget(Target):
    pass


class _PatternTarget(Target):
    kind = ""

    def __init__(self, H):
        self.H = H
        self.spec = f"{self.kind}:{H.name}"

    def _test(self, graph):
        raise NotImplementedError

    def holds(self, graph):
        if graph.num_edges < self.H.num_edges:
            return False
        return self._test(graph)

    def check_after(self, board, edge):
        H = self.H
        if board.maker_count < H.num_edges:
            return False
        adj = board.maker_adj
        if H.is_connected:
            comp = _component(adj, edge[0])
            if len(comp) < H.k:
                return False
            return self._test(component_graph(adj, comp))
        active = _active(adj)
        g = component_graph(adj, active)
        if g.n < H.k:
            # isolated pattern vertices can use untouched host vertices
            spare = board.n - g.n
            g = SparseGraph.from_adjacency(g.adj + [set() for _ in range(min(spare, H.k))])
        return self._test(g)


class MinorTarget(_PatternTarget):
    kind = "minor"

    def _test(self, graph):
        return has_minor(graph, self.H) is not None


class SubdivisionTarget(_PatternTarget):
    kind = "subdivision"

    def _test(self, graph):
        return has_topological_minor(graph, self.H)


class MatchingTarget(Target):
    def __init__(self, m):
        if m < 0:
            raise InvalidConfig(f"matching size must be >= 0, got {m}")
        self.m = m
        self.spec = f"matching:{m}"

    def holds(self, graph):
        return matching_at_least(graph, self.m)

    def check_after(self, board, edge):
        if board.maker_count < self.m:
            return False
        return matching_at_least(component_graph(board.maker_adj, _active(board.maker_adj)), self.m)


def parse_target(spec):
    """Build a target from ``minor:H``, ``subdivision:H``, ``matching:m`` or ``none``."""
    if isinstance(spec, Target):
        return spec
    spec = (spec or "none").strip()
    if spec == "none":
        return NoTarget()
    kind, sep, rest = spec.partition(":")
    if not sep:
        raise InvalidConfig(f"bad target {spec!r}")
    if kind == "minor":
        return MinorTarget(parse_pattern(rest))
    if kind == "subdivision":
        return SubdivisionTarget(parse_pattern(rest))
    if kind == "matching":
        try:
            return MatchingTarget(int(rest))
        except ValueError as exc:
            raise InvalidConfig(f"bad matching size in {spec!r}") from exc
    raise InvalidConfig(f"unknown target kind {kind!r}")
