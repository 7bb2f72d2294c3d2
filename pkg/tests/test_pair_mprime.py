import math
import random

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import girth_brute, to_nx

from mbgame.engine import GameConfig, play_game
from mbgame.errors import CorruptState, InvalidConfig
from mbgame.graphs import PairProcessState, girth, invariant_errors, mprime_filter, pair_process_step
from mbgame.graphs.mprime import default_degree_cap
from mbgame.strategies import random_breaker, random_maker


class _Seq:
    def __init__(self, n, edges):
        self.n = n
        self.maker_edges = edges


def random_sequence(rnd, n, count):
    seen = set()
    out = []
    while len(out) < count:
        u, v = sorted(rnd.sample(range(n), 2))
        if (u, v) not in seen:
            seen.add((u, v))
            out.append((u, v))
    return out


# -- M' filter ------------------------------------------------------------------------


def test_no_constraints_keeps_everything():
    edges = random_sequence(random.Random(1), 12, 40)
    out = mprime_filter(_Seq(12, edges), 3, cap=math.inf)
    assert sorted(out.edges()) == sorted(edges)


def test_infinite_girth_gives_greedy_forest():
    rnd = random.Random(2)
    edges = random_sequence(rnd, 15, 50)
    out = mprime_filter(_Seq(15, edges), math.inf, cap=math.inf)
    assert out.is_forest()
    # greedy in claim order: an edge is kept iff it joins two components of the earlier kept edges
    g = nx.Graph()
    g.add_nodes_from(range(15))
    keep = []
    for u, v in edges:
        if not nx.has_path(g, u, v):
            g.add_edge(u, v)
            keep.append((u, v))
    assert sorted(out.edges()) == sorted(keep)
    assert len(keep) == 15 - nx.number_connected_components(to_nx_simple(15, edges))


def to_nx_simple(n, edges):
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    return g


def test_bad_girth_target():
    with pytest.raises(InvalidConfig):
        mprime_filter(_Seq(5, []), 2)


def test_default_cap_is_natural_log_rounded_up():
    assert default_degree_cap(100) == 5
    assert default_degree_cap(1000) == 7


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 14), st.integers(3, 7) | st.just(math.inf), st.integers(1, 5), st.randoms(use_true_random=False))
def test_filter_output_has_girth_and_degree_bound(n, ell, cap, rnd):
    edges = random_sequence(rnd, n, rnd.randint(0, n * (n - 1) // 2))
    out = mprime_filter(_Seq(n, edges), ell, cap=cap)
    assert girth_brute(to_nx(out)) >= ell
    assert girth(out) >= ell
    assert out.max_degree() <= cap
    assert set(out.edges()) <= set(edges)


def test_filter_on_real_transcript():
    tr = play_game(GameConfig(60, 3, early_stop=False), random_maker(), random_breaker(), seed=4)
    out = mprime_filter(tr, 5)
    assert girth(out) >= 5
    assert out.max_degree() <= default_degree_cap(60)


# -- pair process -----------------------------------------------------------------------


def test_first_edge_joins_c():
    s = pair_process_step(PairProcessState(), (1, 0))
    assert s.C == {(0, 1)} and s.D == set()


def test_touching_edge_forms_cherry():
    s = pair_process_step(PairProcessState(), (0, 1))
    pair_process_step(s, (1, 2))
    assert s.C == set() and s.D == {(0, 1), (1, 2)}
    assert s.d_size == 2


def test_edge_meeting_d_is_ignored():
    s = PairProcessState()
    for e in [(0, 1), (2, 3), (3, 4)]:
        pair_process_step(s, e)
    assert s.C == {(0, 1)} and s.D == {(2, 3), (3, 4)}
    before = s.copy()
    pair_process_step(s, (3, 5))
    assert (s.C, s.D) == (before.C, before.D)


def test_edge_between_two_c_edges():
    s = PairProcessState()
    for e in [(0, 1), (2, 3)]:
        pair_process_step(s, e)
    pair_process_step(s, (1, 2))
    # both C edges leave C; the one at the lower endpoint pairs up
    assert s.C == set()
    assert s.paths == [((0, 1), (1, 2))]


def test_corrupt_state_rejected():
    s = PairProcessState(C={(0, 1), (1, 2)}, c_at={0: (0, 1), 1: (1, 2), 2: (1, 2)})
    assert invariant_errors(s)
    with pytest.raises(CorruptState):
        pair_process_step(s, (5, 6))


def test_repeated_edge_rejected():
    s = pair_process_step(PairProcessState(), (0, 1))
    with pytest.raises(CorruptState):
        pair_process_step(s, (1, 0), validate=False)


def run_pair_process(steps, n, seed, check_every):
    rng = np.random.default_rng(seed)
    us = rng.integers(0, n, size=steps)
    vs = rng.integers(0, n - 1, size=steps)
    vs = vs + (vs >= us)
    s = PairProcessState()
    seen = set()
    bad = 0
    for i, (u, v) in enumerate(zip(us.tolist(), vs.tolist()), start=1):
        e = (min(u, v), max(u, v))
        if e in seen:
            continue  # Maker never claims an edge twice
        seen.add(e)
        c_before, d_before = len(s.C), s.d_size
        pair_process_step(s, (u, v), validate=False)
        if s.d_size < d_before:
            bad += 1
        if s.d_size > d_before and c_before - len(s.C) > 2:
            bad += 1
        if i % check_every == 0 or i == steps:
            bad += len(invariant_errors(s))
            if i % (check_every * 50) == 0:
                s = PairProcessState()  # restart so the process keeps moving
                seen = set()
    return bad


def test_pair_process_invariants_short_run():
    assert run_pair_process(20_000, 200, 0, check_every=1) == 0


@pytest.mark.slow
def test_pair_process_invariants_million_steps():
    assert run_pair_process(10**6, 5000, 1, check_every=1000) == 0
