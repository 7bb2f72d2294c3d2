import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import chisquare

from mbgame.board import BREAKER, FREE, MAKER, Board, edge_id, endpoint_table, new_board, sample_free_edge
from mbgame.errors import AlreadyClaimed, BoardFull, InvalidConfig, InvalidEdge


@pytest.mark.parametrize("n,free", [(2, 1), (5, 10), (100, 4950)])
def test_new_board_counts(n, free):
    b = new_board(n)
    assert b.free_count == free
    assert (b.degree[FREE] == n - 1).all()
    b.check_invariants()


def test_new_board_rejects_tiny():
    with pytest.raises(InvalidConfig):
        new_board(1)


def test_edge_ids_follow_triu_order():
    for n in (2, 3, 7, 12):
        iu, iv = np.triu_indices(n, 1)
        eu, ev = endpoint_table(n)
        assert (eu == iu).all() and (ev == iv).all()
        assert [edge_id(n, u, v) for u, v in zip(iu, iv)] == list(range(len(iu)))
        assert edge_id(n, 1, 0) == edge_id(n, 0, 1)


def test_claim_updates_tallies():
    b = new_board(6)
    b.claim(MAKER, (0, 1))
    assert b.degree[MAKER, 0] == b.degree[MAKER, 1] == 1
    assert b.degree[FREE, 0] == 4
    assert b.free_count + b.maker_count + b.breaker_count == 15
    with pytest.raises(AlreadyClaimed):
        b.claim(BREAKER, (1, 0))
    b.check_invariants()


@pytest.mark.parametrize("edge", [(0, 0), (0, 6), (-1, 2), 15, -1])
def test_claim_rejects_bad_edges(edge):
    with pytest.raises(InvalidEdge):
        new_board(6).claim(MAKER, edge)


def test_sample_single_free_edge():
    b = new_board(4)
    ids = list(range(6))
    b.claim_many(BREAKER, ids[:5])
    rng = np.random.default_rng(0)
    assert {sample_free_edge(b, rng) for _ in range(20)} == {b.endpoints(5)}


def test_sample_full_board():
    b = new_board(3)
    b.claim_many(MAKER, [0, 1, 2])
    with pytest.raises(BoardFull):
        sample_free_edge(b, np.random.default_rng(0))


def test_sample_uniform_chi_square():
    b = new_board(4)
    rng = np.random.default_rng(12345)
    counts = np.bincount([b.sample_free_edge(rng) for _ in range(100_000)], minlength=6)
    assert abs(counts - 100_000 / 6).max() < 3 * np.sqrt(100_000 * (1 / 6) * (5 / 6))
    assert chisquare(counts).pvalue > 1e-3


def test_sample_does_not_modify():
    b = new_board(5)
    b.sample_free_edge(np.random.default_rng(1))
    assert b.free_count == 10


def test_claim_many_rejects_duplicates_and_claimed():
    b = new_board(5)
    with pytest.raises(AlreadyClaimed):
        b.claim_many(BREAKER, [1, 1])
    b.claim(MAKER, 3)
    with pytest.raises(AlreadyClaimed):
        b.claim_many(BREAKER, [2, 3])
    b.check_invariants()


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 12), st.randoms(use_true_random=False), st.integers(1, 5))
def test_random_claims_preserve_invariants(n, rnd, batch):
    b = Board(n)
    rng = np.random.default_rng(rnd.randrange(2**32))
    player = MAKER
    while b.free_count:
        if rnd.random() < 0.5:
            b.claim(player, b.sample_free_edge(rng))
        else:
            b.claim_many(player, b.sample_free_edges(rng, batch))
        b.check_invariants()
        player = BREAKER if player == MAKER else MAKER
    assert b.maker_count + b.breaker_count == n * (n - 1) // 2


def test_view_is_read_only():
    b = new_board(5)
    v = b.view()
    with pytest.raises(ValueError):
        v.owner[0, 1] = MAKER
    b.claim(MAKER, (0, 1))
    assert v.state((0, 1)) == MAKER
    assert v.maker_neighbors(0) == {1}
