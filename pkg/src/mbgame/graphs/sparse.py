from collections import deque


class SparseGraph:
    """Undirected simple graph on vertices ``0..n-1`` stored as neighbour sets."""

    def __init__(self, n, edges=()):
        self.n = int(n)
        self.adj = [set() for _ in range(self.n)]
        self._m = 0
        for u, v in edges:
            self.add_edge(u, v)

    @classmethod
    def from_adjacency(cls, adj):
        g = cls(len(adj))
        g.adj = [set(nb) for nb in adj]
        g._m = sum(len(nb) for nb in g.adj) // 2
        return g

    def __repr__(self):
        return f"SparseGraph(n={self.n}, m={self._m})"

    def __eq__(self, other):
        return isinstance(other, SparseGraph) and self.n == other.n and self.adj == other.adj

    def add_edge(self, u, v):
        if u == v:
            raise ValueError(f"loop at {u}")
        if v not in self.adj[u]:
            self.adj[u].add(v)
            self.adj[v].add(u)
            self._m += 1

    def remove_edge(self, u, v):
        if v in self.adj[u]:
            self.adj[u].discard(v)
            self.adj[v].discard(u)
            self._m -= 1

    def has_edge(self, u, v):
        return v in self.adj[u]

    @property
    def num_edges(self):
        return self._m

    def degree(self, v):
        return len(self.adj[v])

    def max_degree(self):
        return max((len(nb) for nb in self.adj), default=0)

    def edges(self):
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def copy(self):
        return SparseGraph.from_adjacency(self.adj)

    def component_of(self, v):
        seen = {v}
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for y in self.adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return seen

    def components(self):
        """Connected components as lists of vertices, isolated vertices included."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            stack = [s]
            while stack:
                x = stack.pop()
                for y in self.adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        stack.append(y)
            comps.append(comp)
        return comps

    def induced(self, vertices):
        """Induced subgraph relabelled to ``0..k-1``; returns ``(graph, labels)``."""
        labels = sorted(vertices)
        index = {v: i for i, v in enumerate(labels)}
        sub = SparseGraph(len(labels))
        for v in labels:
            i = index[v]
            for w in self.adj[v]:
                j = index.get(w)
                if j is not None and i < j:
                    sub.add_edge(i, j)
        return sub, labels

    def is_forest(self):
        return all(
            sum(len(self.adj[v]) for v in comp) // 2 == len(comp) - 1
            for comp in self.components()
        )
