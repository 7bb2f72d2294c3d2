import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import criterion_brute

from mbgame.boxgame import (
    POLICIES,
    BoxState,
    BoxValue,
    OraclePolicy,
    Variant,
    brute_force_boxmaker,
    criterion_holds,
    fewest_coins_boxbreaker,
    greedy_min_policy,
    harmonic,
    play_box_game,
    removals,
    small_instances,
    spread_even_policy,
)
from mbgame.errors import GameOver, InvalidConfig, OracleTooLarge, PolicyFault


def test_harmonic_numbers():
    assert [harmonic(i) for i in range(4)] == [0, 1, Fraction(3, 2), Fraction(11, 6)]
    assert all(harmonic(i) < harmonic(i + 1) for i in range(1, 30))


@pytest.mark.parametrize("boxes,m,expected", [([3], 2, True), ([4, 4], 2, True), ([2, 10], 2, False), ([], 3, True)])
def test_criterion_examples(boxes, m, expected):
    assert criterion_holds(BoxState(boxes, m)) is expected


def criterion_discrepancies(count=10_000, seed=0, max_k=12):
    rnd = random.Random(seed)
    bad = 0
    for _ in range(count):
        k = rnd.randint(1, max_k)
        m = rnd.randint(1, 6)
        # centre the coin counts near the bound so both answers occur
        scale = int(harmonic(k) * m) + 2
        boxes = [rnd.randint(0, 3 * scale) for _ in range(k)]
        bad += criterion_holds(BoxState(boxes, m)) != criterion_brute(boxes, m)
    return bad


def test_criterion_prefix_matches_subset_enumeration():
    assert criterion_discrepancies() == 0


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 60), min_size=1, max_size=10), st.integers(1, 8), st.integers(1, 50))
def test_criterion_scale_invariant(boxes, m, c):
    assert criterion_holds(BoxState([c * a for a in boxes], c * m)) == criterion_holds(BoxState(boxes, m))


def test_fewest_coins_rule():
    assert fewest_coins_boxbreaker(BoxState([5, 2, 7], 1)) == 1
    assert fewest_coins_boxbreaker(BoxState([3, 3], 1)) == 0
    with pytest.raises(GameOver):
        fewest_coins_boxbreaker(BoxState([], 1))


def test_state_validation():
    with pytest.raises(InvalidConfig):
        BoxState([1, -1], 2)
    with pytest.raises(InvalidConfig):
        BoxState([1], 0)


def test_single_box_lost_on_first_round():
    out = play_box_game(BoxState([2], 2), greedy_min_policy)
    assert out.winner == "boxmaker" and out.round == 1
    for m in range(1, 6):
        assert brute_force_boxmaker(BoxState([m], m)).round == 1


def test_four_four_two_is_a_boxbreaker_win():
    for name, policy in POLICIES.items():
        assert play_box_game(BoxState([4, 4], 2), policy).winner == "boxbreaker", name
    assert brute_force_boxmaker(BoxState([4, 4], 2), breaker="fewest").winner == "boxbreaker"


def test_putback_refills_by_m():
    out = play_box_game(BoxState([9, 9, 9], 2, "putback"), greedy_min_policy, rounds=5)
    assert out.winner == "survived"
    first = out.trace[0]
    assert sum(first["boxes"]) == 27


def test_policies_take_exactly_m():
    st_ = BoxState([1, 5, 2], 4)
    for policy in (greedy_min_policy, spread_even_policy, OraclePolicy()):
        r = policy(st_)
        assert sum(r) == 4 and all(0 <= x <= a for x, a in zip(r, st_.boxes))
    assert greedy_min_policy(BoxState([1, 1], 5)) == [1, 1]


@pytest.mark.parametrize("bad", [lambda s: [s.m], lambda s: [s.m + 1, 0], lambda s: [-1, s.m + 1], lambda s: [0.5, 1.5]])
def test_policy_fault(bad):
    with pytest.raises(PolicyFault):
        play_box_game(BoxState([5, 5], 2), bad)


def test_removals_enumeration():
    rs = list(removals((2, 1), 2))
    assert sorted(rs) == [(1, 1), (2, 0)]
    assert list(removals((), 0)) == [()]


def test_oracle_budget():
    with pytest.raises(OracleTooLarge):
        brute_force_boxmaker(BoxState([5, 9, 13, 17, 21], 4), node_budget=100)


def test_depth_limit():
    # (3, 3, 3) with m = 2: splitting into (2, 2, 3) leaves a box of 2 whatever BoxBreaker removes
    assert brute_force_boxmaker(BoxState([3, 3, 3], 2)) == BoxValue("boxmaker", 2)
    assert brute_force_boxmaker(BoxState([3, 3, 3], 2), depth=1).winner == "boxbreaker"
    assert brute_force_boxmaker(BoxState([2, 2], 1)).winner == "boxbreaker"


def soundness_counterexamples(max_k=3, max_coins=8, max_m=3):
    """Instances where the criterion holds but an optimal BoxMaker still wins."""
    bad = []
    checked = 0
    for boxes, m in small_instances(max_k, max_coins, max_m):
        st_ = BoxState(boxes, m)
        if not criterion_holds(st_):
            continue
        checked += 1
        if brute_force_boxmaker(st_, breaker="fewest").winner == "boxmaker":
            bad.append(("fewest", boxes, m))
        if brute_force_boxmaker(st_, breaker="optimal").winner == "boxmaker":
            bad.append(("optimal", boxes, m))
    return checked, bad


def putback_preservation_counterexamples(max_k=3, max_coins=8, max_m=3):
    """Criterion must survive every BoxMaker removal followed by the fewest-coins refill."""
    bad = []
    for boxes, m in small_instances(max_k, max_coins, max_m):
        st_ = BoxState(boxes, m, "putback")
        if not criterion_holds(st_):
            continue
        coins = min(m, sum(boxes))
        for rem in removals(boxes, coins):
            after = BoxState([a - x for a, x in zip(boxes, rem)], m, "putback")
            if 0 in after.boxes:
                bad.append((boxes, m, rem, "emptied"))
                continue
            after.boxes[fewest_coins_boxbreaker(after)] += coins
            if not criterion_holds(after):
                bad.append((boxes, m, rem))
    return bad


def test_criterion_sound_on_small_instances():
    checked, bad = soundness_counterexamples()
    assert checked > 50
    assert bad == []


def test_putback_preserves_criterion():
    assert putback_preservation_counterexamples() == []


def test_putback_oracle_agrees_on_small_instances():
    for boxes, m in small_instances(2, 6, 2):
        st_ = BoxState(boxes, m, "putback")
        if criterion_holds(st_):
            assert brute_force_boxmaker(st_, breaker="fewest").winner == "survived"


def test_value_monotone_in_coins():
    flips = []
    for boxes, m in small_instances(3, 6, 2):
        if 0 in boxes:
            continue
        base = brute_force_boxmaker(BoxState(boxes, m)).winner
        if base != "boxbreaker":
            continue
        for i in range(len(boxes)):
            more = list(boxes)
            more[i] += 1
            if brute_force_boxmaker(BoxState(more, m)).winner == "boxmaker":
                flips.append((boxes, m, i))
    assert flips == []


def test_oracle_policy_plays_optimally():
    # where the oracle says BoxMaker wins against fewest-coins, the policy achieves it in that many rounds
    for boxes, m in small_instances(3, 5, 2):
        if 0 in boxes:
            continue
        st_ = BoxState(boxes, m)
        v = brute_force_boxmaker(st_, breaker="fewest")
        out = play_box_game(st_, OraclePolicy())
        assert out.winner == v.winner
        if v.winner == "boxmaker":
            assert out.round == v.round


def test_variant_enum():
    assert BoxState([1], 1, "putback").variant is Variant.PUTBACK
    with pytest.raises(ValueError):
        BoxState([1], 1, "other")
