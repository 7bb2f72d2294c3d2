"""Claim board over the edge set of K_n.

Edges are addressed either as canonical pairs ``(u, v)`` with ``u < v`` or as
integer ids in ``range(n * (n - 1) // 2)`` enumerated row by row, i.e. in the
order of ``numpy.triu_indices(n, 1)``.

The board keeps three synchronized structures:

* ``owner`` -- dense symmetric ``n x n`` int8 matrix holding FREE/MAKER/BREAKER,
  so strategies can read a vertex's free neighbourhood as one row scan;
* a dense array of free edge ids with a position index (swap-with-last), giving
  O(1) uniform sampling and O(1) deletion;
* per-vertex degree tallies for M, B and F.
"""

from functools import lru_cache

import numpy as np

from .errors import AlreadyClaimed, BoardFull, InvalidConfig, InvalidEdge

FREE, MAKER, BREAKER = 0, 1, 2
_DIAGONAL = 3

PLAYER_CODES = {MAKER: "M", BREAKER: "B"}
PLAYER_FROM_CODE = {"M": MAKER, "B": BREAKER}


def num_edges(n):
    return n * (n - 1) // 2


def edge_id(n, u, v):
    """Id of the edge ``uv`` of K_n. Endpoints may be given in any order."""
    if u == v or not (0 <= u < n and 0 <= v < n):
        raise InvalidEdge(f"invalid edge ({u}, {v}) for n={n}")
    if u > v:
        u, v = v, u
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


def edge_ids(n, us, vs):
    """Vectorized :func:`edge_id` without range validation."""
    us = np.asarray(us, dtype=np.int64)
    vs = np.asarray(vs, dtype=np.int64)
    lo = np.minimum(us, vs)
    hi = np.maximum(us, vs)
    return lo * (2 * n - lo - 1) // 2 + (hi - lo - 1)


@lru_cache(maxsize=2)
def endpoint_table(n):
    """Read-only arrays ``(eu, ev)`` mapping edge id to its endpoints."""
    m = num_edges(n)
    dtype = np.int32 if n < 2**31 else np.int64
    eu = np.repeat(np.arange(n - 1, dtype=dtype), np.arange(n - 1, 0, -1))
    starts = np.arange(n - 1, dtype=np.int64)
    starts = starts * (2 * n - starts - 1) // 2
    ids = np.arange(m, dtype=np.int64)
    ev = (ids - starts[eu] + eu + 1).astype(dtype)
    eu.flags.writeable = False
    ev.flags.writeable = False
    return eu, ev


def canonical(u, v):
    if u == v:
        raise InvalidEdge(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


class Board:
    """Mutable claim state of E(K_n)."""

    def __init__(self, n):
        if n < 2:
            raise InvalidConfig(f"board needs n >= 2, got {n}")
        self.n = int(n)
        self.num_edges = num_edges(self.n)
        self._eu, self._ev = endpoint_table(self.n)
        self.owner = np.zeros((self.n, self.n), dtype=np.int8)
        np.fill_diagonal(self.owner, _DIAGONAL)
        idx_dtype = np.int32 if self.num_edges < 2**31 else np.int64
        self._free = np.arange(self.num_edges, dtype=idx_dtype)
        self._pos = np.arange(self.num_edges, dtype=idx_dtype)
        self._nfree = self.num_edges
        self.degree = np.zeros((3, self.n), dtype=np.int64)
        self.degree[FREE] = self.n - 1
        self.counts = [self.num_edges, 0, 0]
        self.maker_adj = [set() for _ in range(self.n)]
        self._view = None

    def __repr__(self):
        return "Board(n={}, free={}, maker={}, breaker={})".format(self.n, *self.counts)

    # -- addressing ---------------------------------------------------------

    def edge_id(self, u, v):
        return edge_id(self.n, u, v)

    def edge_ids(self, us, vs):
        return edge_ids(self.n, us, vs)

    def endpoints(self, e):
        e = self._check_id(e)
        return int(self._eu[e]), int(self._ev[e])

    def endpoints_many(self, ids):
        ids = np.asarray(ids, dtype=np.int64)
        return self._eu[ids], self._ev[ids]

    def _check_id(self, e):
        e = int(e)
        if not 0 <= e < self.num_edges:
            raise InvalidEdge(f"edge id {e} out of range for n={self.n}")
        return e

    def as_id(self, edge):
        """Accept an edge id or a vertex pair and return the id."""
        if isinstance(edge, (tuple, list)):
            u, v = edge
            return self.edge_id(int(u), int(v))
        return self._check_id(edge)

    # -- queries ------------------------------------------------------------

    @property
    def free_count(self):
        return self._nfree

    @property
    def maker_count(self):
        return self.counts[MAKER]

    @property
    def breaker_count(self):
        return self.counts[BREAKER]

    def state(self, edge):
        u, v = self.endpoints(self.as_id(edge))
        return int(self.owner[u, v])

    def is_free(self, edge):
        return self.state(edge) == FREE

    def free_edges(self):
        """Copy of the free edge ids (in internal order)."""
        return self._free[: self._nfree].copy()

    def free_neighbors(self, v):
        return np.flatnonzero(self.owner[v] == FREE)

    def neighbors(self, v, player):
        return np.flatnonzero(self.owner[v] == player)

    def maker_edges(self):
        return [(u, w) for u in range(self.n) for w in self.maker_adj[u] if u < w]

    def maker_graph(self):
        from .graphs.sparse import SparseGraph

        return SparseGraph.from_adjacency(self.maker_adj)

    def maker_component(self, v):
        """Vertices of the Maker component containing ``v`` (BFS)."""
        seen = {v}
        stack = [v]
        adj = self.maker_adj
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    # -- sampling -----------------------------------------------------------

    def sample_free_edge(self, rng):
        if self._nfree == 0:
            raise BoardFull("no free edges left")
        return int(self._free[rng.integers(self._nfree)])

    def sample_free_edges(self, rng, k):
        """``k`` distinct uniformly random free edge ids (all of them if fewer remain)."""
        k = min(int(k), self._nfree)
        if k <= 0:
            return np.empty(0, dtype=np.int64)
        if k == self._nfree:
            return self._free[: self._nfree].astype(np.int64)
        pos = rng.choice(self._nfree, size=k, replace=False)
        return self._free[pos].astype(np.int64)

    # -- mutation -----------------------------------------------------------

    def claim(self, player, edge):
        e = self.as_id(edge)
        u, v = int(self._eu[e]), int(self._ev[e])
        if self.owner[u, v] != FREE:
            raise AlreadyClaimed(f"edge ({u}, {v}) already claimed")
        self.owner[u, v] = player
        self.owner[v, u] = player
        last = self._nfree - 1
        p = int(self._pos[e])
        moved = self._free[last]
        self._free[p] = moved
        self._pos[moved] = p
        self._nfree = last
        self.degree[FREE, u] -= 1
        self.degree[FREE, v] -= 1
        self.degree[player, u] += 1
        self.degree[player, v] += 1
        self.counts[FREE] -= 1
        self.counts[player] += 1
        if player == MAKER:
            self.maker_adj[u].add(v)
            self.maker_adj[v].add(u)
        return u, v

    def claim_many(self, player, ids):
        """Claim a batch of distinct free edges for one player."""
        ids = np.asarray(ids, dtype=np.int64).ravel()
        k = ids.size
        if k == 0:
            return
        if ids.min() < 0 or ids.max() >= self.num_edges:
            raise InvalidEdge("edge id out of range in batch")
        us = self._eu[ids]
        vs = self._ev[ids]
        if (self.owner[us, vs] != FREE).any():
            raise AlreadyClaimed("batch contains a claimed edge")
        if k > 1 and np.unique(ids).size != k:
            raise AlreadyClaimed("batch contains a duplicate edge")
        self.owner[us, vs] = player
        self.owner[vs, us] = player

        old = self._nfree
        new = old - k
        pos = self._pos[ids]
        holes = np.sort(pos[pos < new])
        tail = self._free[new:old]
        keep = tail[self.owner[self._eu[tail], self._ev[tail]] == FREE]
        self._free[holes] = keep
        self._pos[keep] = holes
        self._nfree = new

        hits = np.bincount(np.concatenate([us, vs]), minlength=self.n)
        self.degree[FREE] -= hits
        self.degree[player] += hits
        self.counts[FREE] -= k
        self.counts[player] += k
        if player == MAKER:
            for u, v in zip(us.tolist(), vs.tolist()):
                self.maker_adj[u].add(v)
                self.maker_adj[v].add(u)

    # -- auditing -----------------------------------------------------------

    def check_invariants(self):
        """Assert conservation of edge and degree tallies; raises AssertionError."""
        assert sum(self.counts) == self.num_edges, "edge tallies do not add up"
        assert self.counts[FREE] == self._nfree
        assert (self.degree.sum(axis=0) == self.n - 1).all(), "degree identity broken"
        for player in (FREE, MAKER, BREAKER):
            row_counts = (self.owner == player).sum(axis=1)
            assert (row_counts == self.degree[player]).all()
        free = self._free[: self._nfree]
        assert (self.owner[self._eu[free], self._ev[free]] == FREE).all()
        assert (self._pos[free] == np.arange(self._nfree)).all()

    def view(self):
        if self._view is None:
            self._view = BoardView(self)
        return self._view


class BoardView:
    """Read-only window on a :class:`Board` handed to strategies."""

    def __init__(self, board):
        self._board = board
        self.owner = board.owner.view()
        self.owner.flags.writeable = False
        self.degree = board.degree.view()
        self.degree.flags.writeable = False

    n = property(lambda self: self._board.n)
    num_edges = property(lambda self: self._board.num_edges)
    free_count = property(lambda self: self._board.free_count)
    maker_count = property(lambda self: self._board.maker_count)
    breaker_count = property(lambda self: self._board.breaker_count)

    def maker_neighbors(self, v):
        # live set owned by the board; callers must not mutate it
        return self._board.maker_adj[v]

    def edge_id(self, u, v):
        return self._board.edge_id(u, v)

    def edge_ids(self, us, vs):
        return self._board.edge_ids(us, vs)

    def endpoints(self, e):
        return self._board.endpoints(e)

    def endpoints_many(self, ids):
        return self._board.endpoints_many(ids)

    def state(self, edge):
        return self._board.state(edge)

    def is_free(self, edge):
        return self._board.is_free(edge)

    def free_edges(self):
        return self._board.free_edges()

    def free_neighbors(self, v):
        return self._board.free_neighbors(v)

    def neighbors(self, v, player):
        return self._board.neighbors(v, player)

    def sample_free_edge(self, rng):
        return self._board.sample_free_edge(rng)

    def sample_free_edges(self, rng, k):
        return self._board.sample_free_edges(rng, k)

    def maker_graph(self):
        return self._board.maker_graph()

    def maker_component(self, v):
        return self._board.maker_component(v)


def new_board(n):
    return Board(n)


def sample_free_edge(board, rng):
    """Uniformly random free edge of ``board`` as a canonical pair."""
    return board.endpoints(board.sample_free_edge(rng))
