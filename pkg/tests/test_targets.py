import random

import pytest

from mbgame.board import MAKER, Board
from mbgame.errors import InvalidConfig, InvalidPattern
from mbgame.graphs import SparseGraph
from mbgame.targets import MatchingTarget, MinorTarget, NoTarget, SubdivisionTarget, parse_target


def test_parse_target():
    assert isinstance(parse_target("none"), NoTarget)
    assert isinstance(parse_target(None), NoTarget)
    assert isinstance(parse_target("minor:P4"), MinorTarget)
    assert isinstance(parse_target("subdivision:K1,4"), SubdivisionTarget)
    t = parse_target("matching:3")
    assert isinstance(t, MatchingTarget) and t.m == 3
    assert str(parse_target("minor:M3")) == "minor:M3"


@pytest.mark.parametrize("bad", ["P4", "matching:x", "matching:-1", "cycle:5", "minor:"])
def test_bad_targets(bad):
    with pytest.raises((InvalidConfig, InvalidPattern)):
        parse_target(bad)


def test_no_target_never_holds():
    b = Board(4)
    b.claim(MAKER, (0, 1))
    assert not NoTarget().check_after(b, (0, 1))
    assert not NoTarget().holds(SparseGraph(3, [(0, 1), (1, 2)]))


def test_incremental_check_agrees_with_full_check():
    rnd = random.Random(9)
    targets = [parse_target(s) for s in ("minor:P4", "minor:M3", "minor:K1,3", "subdivision:K1,3", "matching:2")]
    for _ in range(40):
        n = rnd.randint(4, 10)
        b = Board(n)
        g = SparseGraph(n)
        before = {t.spec: False for t in targets}
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        rnd.shuffle(pairs)
        for e in pairs[: rnd.randint(1, len(pairs))]:
            b.claim(MAKER, e)
            g.add_edge(*e)
            for t in targets:
                full = t.holds(g)
                quick = t.check_after(b, e)
                assert not quick or full
                # the edge that first completes the target must be caught
                if full and not before[t.spec]:
                    assert quick
                before[t.spec] = full


def test_disconnected_pattern_uses_isolated_board_vertices():
    b = Board(6)
    b.claim(MAKER, (0, 1))
    b.claim(MAKER, (2, 3))
    b.claim(MAKER, (4, 5))
    assert parse_target("minor:M3").check_after(b, (4, 5))
    assert parse_target("matching:3").check_after(b, (4, 5))
