"""Maker builds the branch sets of a forest minor, playing BoxBreaker on the side.

The free edges at each branch set are the coins of a box game. Each round
Maker either opens the branch set of the next pattern vertex (when every group
of existing sets is rich enough in free edges) or grows the poorest set by the
free edge to the unused vertex of largest free degree.
"""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..board import FREE
from ..boxgame import harmonic
from ..errors import InvalidConfig, StrategyStuck
from .base import Strategy


def as_fraction(x):
    return x if isinstance(x, Fraction) else Fraction(str(x))


def degenerate_order(H):
    """Order the vertices of forest ``H`` so each has at most one earlier neighbour.

    Components are taken in order of their smallest vertex, each explored
    breadth-first from that vertex. Returns ``(order, parent)`` where
    ``parent[i]`` is the position in ``order`` of the earlier neighbour of
    ``order[i]`` or None.
    """
    if not H.is_forest:
        raise InvalidConfig(f"{H} is not a forest")
    adj = H.adjacency
    order, parent = [], []
    pos = {}
    for comp in sorted(H.components, key=min):
        root = min(comp)
        queue = [root]
        pos[root] = len(order)
        order.append(root)
        parent.append(None)
        for x in queue:
            for y in sorted(adj[x]):
                if y not in pos:
                    pos[y] = len(order)
                    order.append(y)
                    parent.append(pos[x])
                    queue.append(y)
    return order, parent


def prefix_sums(values):
    return np.cumsum(np.sort(np.asarray(values, dtype=np.int64)))


def opening_condition(f, n, eps):
    """Every nonempty group S of sets has sum f > h_{|S|+1} (|S|+1) (1 - eps/2) n.

    The bound depends only on |S|, so the ascending prefixes are the hardest
    groups and checking them is enough.
    """
    eps = as_fraction(eps)
    scale = (1 - eps / 2) * n
    for s, total in enumerate(prefix_sums(f).tolist(), start=1):
        if not total > harmonic(s + 1) * (s + 1) * scale:
            return False
    return True


def potential_bound(s, n, eps, k, t, T):
    eps = as_fraction(eps)
    return harmonic(s) * s * (1 - eps / 2) * n + Fraction(s, k) * (t - T) * (eps / 4) * n


def potential_holds(f, n, eps, k, t, T):
    """Ascending-prefix form of the branch-set potential; returns the first failing size or 0."""
    for s, total in enumerate(prefix_sums(f).tolist(), start=1):
        if total < potential_bound(s, n, eps, k, t, T):
            return s
    return 0


def free_edges_at(owner, members):
    """Number of free edges with at least one endpoint in ``members``."""
    idx = np.fromiter(members, dtype=np.int64)
    rows = owner[idx] == FREE
    inside = rows[:, idx].sum() // 2
    return int(rows.sum() - inside)


@dataclass
class BranchSetPlan:
    H: object
    eps: Fraction
    order: list
    parent: list
    branch_sets: list = field(default_factory=list)
    T: int = 0

    @property
    def r(self):
        return len(self.branch_sets)

    @property
    def k(self):
        return self.H.k

    def used(self):
        out = set()
        for S in self.branch_sets:
            out |= S
        return out

    def embedding(self):
        """Branch sets keyed by pattern vertex, for the created sets."""
        return {self.order[i]: frozenset(S) for i, S in enumerate(self.branch_sets)}


class BoxMinorMaker(Strategy):
    def __init__(self, H, eps):
        super().__init__()
        eps = as_fraction(eps)
        if not 0 < eps < 1:
            raise InvalidConfig(f"eps must lie in (0, 1), got {eps}")
        order, parent = degenerate_order(H)
        self.H = H
        self.eps = eps
        self._order, self._parent = order, parent
        self.name = f"box-minor:H={H.name},eps={float(eps):g}"

    def on_game_start(self, config, view, rng):
        super().on_game_start(config, view, rng)
        self.plan = BranchSetPlan(self.H, self.eps, list(self._order), list(self._parent))
        self.fallbacks = 0

    def maker_move(self, view, rng):
        try:
            return self._planned_move(view)
        except StrategyStuck as exc:
            self.fallbacks += 1
            self.event("stuck", str(exc))
            return view.sample_free_edge(rng)

    def _first_move(self, view):
        dF = view.degree[FREE]
        u = int(np.argmax(dF))
        nbrs = view.owner[u] == FREE
        if not nbrs.any():
            raise StrategyStuck("no free edge on the board")
        v = int(np.argmax(np.where(nbrs, dF, -1)))
        self.plan.branch_sets.append({u, v})
        self.plan.T = self.round
        return view.edge_id(u, v)

    def _grow_from(self, view, i):
        """Best free edge from branch set ``i`` to an unused vertex: ``(u, v)``."""
        plan = self.plan
        owner = view.owner
        S = np.fromiter(plan.branch_sets[i], dtype=np.int64)
        cand = (owner[S] == FREE).any(axis=0)
        used = np.fromiter(plan.used(), dtype=np.int64)
        cand[used] = False
        if not cand.any():
            raise StrategyStuck(f"branch set {i} has no free edge to an unused vertex")
        v = int(np.argmax(np.where(cand, view.degree[FREE], -1)))
        u = int(S[np.flatnonzero(owner[S, v] == FREE)].min())
        return u, v

    def branch_free_counts(self, view):
        return [free_edges_at(view.owner, S) for S in self.plan.branch_sets]

    def _planned_move(self, view):
        plan = self.plan
        if plan.r == 0:
            return self._first_move(view)
        f = self.branch_free_counts(view)
        if plan.r < plan.k and opening_condition(f, view.n, plan.eps):
            i = plan.parent[plan.r]
            if i is None:
                i = 0
            u, v = self._grow_from(view, i)
            plan.branch_sets.append({v})
            plan.T = self.round
            return view.edge_id(u, v)
        i = int(np.argmin(f))
        u, v = self._grow_from(view, i)
        plan.branch_sets[i].add(v)
        return view.edge_id(u, v)


def box_minor_maker(H, eps):
    return BoxMinorMaker(H, eps)
