import numpy as np

from ..board import FREE, MAKER
from .base import Strategy


class StarForcingBreaker(Strategy):
    """Force every Maker component to be a star centred on its head.

    Maker's edge ``uv`` joins two heads, at least one of them (``u``) isolated.
    Breaker makes ``v`` the head of the merged component, claims every free
    edge at ``u`` and every free edge from ``v`` to a non-isolated vertex.
    This needs at most ``n`` edges per round.
    """

    name = "star-forcing"

    def on_game_start(self, config, view, rng):
        super().on_game_start(config, view, rng)
        self.heads = np.ones(config.n, dtype=bool)

    def _orient(self, view, a, b):
        """Return ``(u, v)``: ``u`` joins the component headed by ``v``."""
        deg = view.degree[MAKER]
        a_iso, b_iso = deg[a] == 1, deg[b] == 1
        if a_iso and b_iso:
            return (a, b) if a < b else (b, a)
        if a_iso:
            return a, b
        if b_iso:
            return b, a
        self.event("invariant-broken", f"Maker edge ({a}, {b}) joins two non-trivial components")
        return (a, b) if deg[a] <= deg[b] else (b, a)

    def breaker_block(self, view, last_maker_edge, budget, rng):
        u, v = self._orient(view, *last_maker_edge)
        self.heads[u] = False
        self.heads[v] = True
        owner = view.owner
        at_u = np.flatnonzero(owner[u] == FREE)
        at_v = np.flatnonzero((owner[v] == FREE) & (view.degree[MAKER] > 0))
        ids = np.concatenate(
            [view.edge_ids(np.full(at_u.size, u), at_u), view.edge_ids(np.full(at_v.size, v), at_v)]
        )
        if ids.size > budget:
            self.event("shortfall", f"needs {ids.size} edges, budget {budget}")
            ids = ids[:budget]
        return ids


def star_forcing_breaker():
    return StarForcingBreaker()
