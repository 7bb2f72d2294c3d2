"""Common player interface and the uniformly random players."""

import numpy as np


class Strategy:
    """Base class for both roles.

    ``maker_move`` returns one free edge (id or vertex pair); ``breaker_block``
    returns at most ``budget`` distinct free edges. Strategies only read the
    board through the view handed to them.
    """

    name = "strategy"
    # set to True if on_opponent_move needs Breaker's edges as vertex pairs
    wants_opponent_moves = False

    def __init__(self):
        self.events = []
        self.round = 0

    def on_game_start(self, config, view, rng):
        self.config = config
        self.events = []
        self.round = 0

    def event(self, kind, message=""):
        self.events.append((self.round, kind, message))

    def maker_move(self, view, rng):
        raise NotImplementedError(f"{self.name} cannot play Maker")

    def breaker_block(self, view, last_maker_edge, budget, rng):
        raise NotImplementedError(f"{self.name} cannot play Breaker")

    def on_opponent_move(self, edges):
        pass


class RandomMaker(Strategy):
    name = "random"

    def maker_move(self, view, rng):
        return view.sample_free_edge(rng)


class RandomBreaker(Strategy):
    name = "random"

    def breaker_block(self, view, last_maker_edge, budget, rng):
        return view.sample_free_edges(rng, budget)


def random_maker():
    return RandomMaker()


def random_breaker():
    return RandomBreaker()


def take_random(rng, ids, k):
    """``k`` distinct entries of ``ids`` chosen uniformly (all of them if fewer)."""
    ids = np.asarray(ids, dtype=np.int64)
    if k >= ids.size:
        return ids
    if k <= 0:
        return ids[:0]
    return rng.choice(ids, size=k, replace=False)
