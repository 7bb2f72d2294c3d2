"""Small pattern graphs H for minor, subdivision and matching targets."""

import re
from dataclasses import dataclass, field
from functools import cached_property

from ..errors import InvalidPattern
from .sparse import SparseGraph


@dataclass(frozen=True)
class PatternGraph:
    k: int
    edges: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.k < 1:
            raise InvalidPattern("pattern needs at least one vertex")
        canon = set()
        for u, v in self.edges:
            if u == v or not (0 <= u < self.k and 0 <= v < self.k):
                raise InvalidPattern(f"bad pattern edge ({u}, {v}) for k={self.k}")
            canon.add((min(u, v), max(u, v)))
        if len(canon) != len(self.edges):
            raise InvalidPattern("duplicate pattern edge")
        object.__setattr__(self, "edges", tuple(sorted(canon)))
        if not self.name:
            object.__setattr__(self, "name", f"H[{self.k}:{len(self.edges)}]")

    def __str__(self):
        return self.name

    @cached_property
    def adjacency(self):
        adj = [set() for _ in range(self.k)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    @property
    def num_edges(self):
        return len(self.edges)

    def degree(self, v):
        return len(self.adjacency[v])

    @cached_property
    def max_degree(self):
        return max((len(a) for a in self.adjacency), default=0)

    def as_graph(self):
        return SparseGraph(self.k, self.edges)

    @cached_property
    def components(self):
        return self.as_graph().components()

    @cached_property
    def tau(self):
        """Maximum number of edges in a connected component."""
        adj = self.adjacency
        return max(sum(len(adj[v]) for v in comp) // 2 for comp in self.components)

    @cached_property
    def is_forest(self):
        return self.num_edges == self.k - len(self.components)

    @property
    def is_connected(self):
        return len(self.components) == 1

    @property
    def class_label(self):
        """Which case of the minor-game classification H falls in (None if edgeless)."""
        if self.tau == 0:
            return None
        if not self.is_forest:
            return 4
        if self.tau == 1:
            return 1
        if self.tau == 2:
            return 2
        return 3

    def isolated_vertices(self):
        return [v for v in range(self.k) if not self.adjacency[v]]

    def without_isolated(self):
        keep = [v for v in range(self.k) if self.adjacency[v]]
        index = {v: i for i, v in enumerate(keep)}
        edges = tuple((index[u], index[v]) for u, v in self.edges)
        return PatternGraph(max(len(keep), 1), edges, name=f"{self.name}-core") if keep else None

    def path_order(self):
        """Vertex sequence if H is a path (single component, max degree <= 2, acyclic)."""
        if not self.is_connected or not self.is_forest or self.max_degree > 2:
            return None
        if self.k == 1:
            return [0]
        adj = self.adjacency
        start = next(v for v in range(self.k) if len(adj[v]) == 1)
        order, prev = [start], None
        while len(order) < self.k:
            cur = order[-1]
            nxt = next(w for w in adj[cur] if w != prev)
            prev = cur
            order.append(nxt)
        return order

    def is_matching(self):
        return self.num_edges > 0 and self.max_degree == 1


# -- constructors --------------------------------------------------------------


def path(k):
    return PatternGraph(k, tuple((i, i + 1) for i in range(k - 1)), name=f"P{k}")


def complete(k):
    return PatternGraph(k, tuple((i, j) for i in range(k) for j in range(i + 1, k)), name=f"K{k}")


def star(s):
    return PatternGraph(s + 1, tuple((0, i) for i in range(1, s + 1)), name=f"K1,{s}")


def matching(m):
    return PatternGraph(2 * m, tuple((2 * i, 2 * i + 1) for i in range(m)), name=f"M{m}")


def spider(*legs):
    """Legs of the given edge lengths glued at vertex 0."""
    edges = []
    nxt = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return PatternGraph(nxt, tuple(edges), name="spider:" + ",".join(map(str, legs)))


_NAMED = [
    (re.compile(r"^P(\d+)$"), lambda m: path(int(m[1]))),
    (re.compile(r"^K1,(\d+)$"), lambda m: star(int(m[1]))),
    (re.compile(r"^K(\d+)$"), lambda m: complete(int(m[1]))),
    (re.compile(r"^M(\d+)$"), lambda m: matching(int(m[1]))),
    (re.compile(r"^triangle$"), lambda m: PatternGraph(3, ((0, 1), (1, 2), (0, 2)), name="triangle")),
    (re.compile(r"^spider:(\d+(?:,\d+)*)$"), lambda m: spider(*map(int, m[1].split(",")))),
]


def parse_pattern(spec):
    """Resolve a built-in name (``P4``, ``K1,3``, ``M2``, ``spider:1,2,3`` ...) or the text format."""
    spec = spec.strip()
    for rx, build in _NAMED:
        m = rx.match(spec)
        if m:
            try:
                return build(m)
            except InvalidPattern:
                raise
            except ValueError as exc:
                raise InvalidPattern(str(exc)) from exc
    if "\n" in spec or re.match(r"^\d+\s+\d+$", spec):
        return read_pattern_text(spec)
    raise InvalidPattern(f"unknown pattern {spec!r}")


def read_pattern_text(text, name=""):
    lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
    try:
        k, m = int(lines[0][0]), int(lines[0][1])
        edges = tuple((int(a), int(b)) for a, b in lines[1 : 1 + m])
    except (IndexError, ValueError) as exc:
        raise InvalidPattern(f"malformed pattern text: {exc}") from exc
    if len(edges) != m:
        raise InvalidPattern(f"expected {m} edges, found {len(edges)}")
    return PatternGraph(k, edges, name=name)


def write_pattern_text(H):
    return "\n".join([f"{H.k} {H.num_edges}"] + [f"{u} {v}" for u, v in H.edges]) + "\n"
