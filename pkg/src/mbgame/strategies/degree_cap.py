import numpy as np

from ..board import FREE
from ..errors import InvalidConfig
from .base import Strategy, take_random


class DegreeCapBreaker(Strategy):
    """Keep Maker's maximum degree below ``k``.

    After Maker claims ``uv`` Breaker takes ``cap = n // (k - 1)`` free edges at
    ``u`` and then ``cap`` at ``v`` (every free edge there if fewer remain),
    chosen at random when there are more than ``cap``. With bias ``2 * cap``
    this keeps ``d_B(x) >= min(d_M(x) * cap, n - 1 - d_M(x))`` at every vertex.
    """

    def __init__(self, k):
        super().__init__()
        if k < 2:
            raise InvalidConfig(f"degree cap k must be >= 2, got {k}")
        self.k = int(k)
        self.name = f"degree-cap:k={self.k}"

    def on_game_start(self, config, view, rng):
        super().on_game_start(config, view, rng)
        self.cap = config.n // (self.k - 1)

    def breaker_block(self, view, last_maker_edge, budget, rng):
        chosen = []
        left = budget
        short = False
        for x in last_maker_edge:
            nbrs = np.flatnonzero(view.owner[x] == FREE)
            want = min(self.cap, nbrs.size)
            if want > left:
                short = True
                want = left
            picked = take_random(rng, nbrs, want)
            chosen.append(view.edge_ids(np.full(picked.size, x), picked))
            left -= picked.size
        if short:
            self.event("shortfall", f"budget {budget} below the {self.cap}-per-endpoint rule")
        return np.concatenate(chosen)


def degree_cap_breaker(k):
    return DegreeCapBreaker(k)
