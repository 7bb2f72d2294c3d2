"""Acceptance suite: one test per primary criterion, each printing a PASS/FAIL line.

Under pytest the lines are repeated in the terminal summary; ``python
tests/test_acceptance.py`` prints them as it goes.
"""

import math
import random
import sys
import time
from math import comb

import pytest

from mbgame.boxgame import BoxState, brute_force_boxmaker, criterion_holds, small_instances
from mbgame.engine import GameConfig, final_maker_edge_count, play_game
from mbgame.experiments import ExperimentSpec, bias_sweep, csv_text, run_point
from mbgame.graphs import girth, longest_path_at_least, mprime_filter, parse_pattern
from mbgame.graphs.mprime import default_degree_cap
from mbgame.strategies import (
    BoxMinorMaker,
    DegreePotentialMonitor,
    GBoxInvariantMonitor,
    Invariant1Monitor,
    Invariant2Monitor,
    PairProcessMonitor,
    TwoPhaseP11Breaker,
    degree_cap_breaker,
    random_breaker,
    random_maker,
    star_forcing_breaker,
)
from test_boxgame import criterion_discrepancies, putback_preservation_counterexamples
from test_graph_detectors import atlas_minor_discrepancies, matching_discrepancies, path_discrepancies

RESULTS = {}


def report(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}"
    RESULTS[number] = line
    print(line)
    return ok


def maker_graph_of(tr):
    from mbgame.graphs import SparseGraph

    return SparseGraph(tr.n, tr.maker_edges)


# 1 -------------------------------------------------------------------------------------------


def criterion_1():
    start = time.perf_counter()
    worst = []
    for n, k in [(50, 2), (50, 3), (200, 3), (200, 5)]:
        b = 2 * (n // (k - 1))
        capped = potential_ok = 0
        for seed in range(100):
            mon = DegreePotentialMonitor()
            tr = play_game(GameConfig(n, b, early_stop=False), random_maker(), degree_cap_breaker(k), [mon], seed=seed, record=False)
            capped += maker_graph_of(tr).max_degree() < k
            potential_ok += mon.report()["violations"] == 0
        worst.append(f"(n={n},k={k}) {capped}/100 {potential_ok}/100")
        if capped < 100 or potential_ok < 100:
            break
    elapsed = time.perf_counter() - start
    ok = all(w.endswith("100/100 100/100") for w in worst) and len(worst) == 4 and elapsed < 60
    return ok, f"max degree < k and potential: {'; '.join(worst)}; {elapsed:.1f}s"


def test_criterion_1_degree_cap():
    ok, detail = criterion_1()
    assert report(1, ok, detail), detail


# 2 -------------------------------------------------------------------------------------------


def criterion_2():
    start = time.perf_counter()
    parts = []
    for n in (50, 200):
        good = 0
        for seed in range(100):
            mon = Invariant1Monitor()
            tr = play_game(GameConfig(n, n, early_stop=False), random_maker(), star_forcing_breaker(), [mon], seed=seed, record=False)
            g = maker_graph_of(tr)
            stars = all(_is_star(g, comp) for comp in g.components())
            good += mon.report()["violations"] == 0 and stars and not longest_path_at_least(g, 3)
        parts.append(f"n={n} {good}/100")
    elapsed = time.perf_counter() - start
    ok = all(p.endswith("100/100") for p in parts) and elapsed < 60
    return ok, f"invariant, stars, no P4: {'; '.join(parts)}; {elapsed:.1f}s"


def _is_star(g, comp):
    if len(comp) <= 2:
        return True
    degs = sorted(g.degree(v) for v in comp)
    return degs[-1] == len(comp) - 1 and degs[-2] == 1


def test_criterion_2_star_forcing():
    ok, detail = criterion_2()
    assert report(2, ok, detail), detail


# 3 -------------------------------------------------------------------------------------------


def criterion_3():
    n = 200
    start_b = math.ceil(comb(n, 2) / 3)
    rates = {}
    for b in (start_b, start_b + 1000, 9948, 9949, 12000):
        p = run_point(ExperimentSpec(n=n, biases=[b], target="minor:M3", games=20, seed=3), b)
        rates[b] = p.win_rate
    rnd = random.Random(33)
    count_ok = 0
    for _ in range(20):
        nn = rnd.randint(3, 120)
        bb = rnd.randint(1, comb(nn, 2) + 5)
        tr = play_game(GameConfig(nn, bb, early_stop=False), random_maker(), random_breaker(), seed=rnd.randrange(2**32), record=False)
        count_ok += len(tr.maker_edges) == math.ceil(comb(nn, 2) / (bb + 1)) == final_maker_edge_count(nn, bb)
    ok = all(r == 0 for r in rates.values()) and count_ok == 20
    shown = ", ".join(f"b={b}: {r:.2f}" for b, r in rates.items())
    return ok, f"win rate for b >= {start_b} must be 0 ({shown}); edge counts {count_ok}/20"


def test_criterion_3_edge_count_cutoff():
    ok, detail = criterion_3()
    assert report(3, ok, detail), detail


# 4 -------------------------------------------------------------------------------------------


def criterion_4():
    start = time.perf_counter()
    n = 2000
    b = int(0.8 * n * n / 4)
    p = run_point(ExperimentSpec(n=n, biases=[b], target="minor:M3", games=200, seed=4), b)
    elapsed = time.perf_counter() - start
    ok = p.win_rate >= 0.9 and elapsed < 120
    return ok, f"n={n} b={b} win rate {p.win_rate:.3f} (need >= 0.9); {elapsed:.1f}s"


def test_criterion_4_random_matching():
    ok, detail = criterion_4()
    assert report(4, ok, detail), detail


# 5 -------------------------------------------------------------------------------------------


def criterion_5():
    n = 3000
    b = int(1.9 * n)
    limit = n ** (2 / 3)
    parts = []
    ok = True
    for name, factory in (("degree-cap:k=2", lambda: degree_cap_breaker(2)), ("random", random_breaker)):
        wins = early = 0
        for seed in range(100):
            mon = PairProcessMonitor()
            tr = play_game(GameConfig(n, b, target="minor:P3"), random_maker(), factory(), [mon], seed=seed, record=False)
            wins += tr.winner == "maker"
            first = mon.report()["first_round_d2"]
            early += first is not None and first <= limit
        ok = ok and wins >= 90 and early >= 90
        parts.append(f"vs {name}: wins {wins}/100, |D|>=2 by round {limit:.0f} in {early}/100")
    return ok, "; ".join(parts) + " (need >= 90 each)"


def test_criterion_5_cherries():
    ok, detail = criterion_5()
    assert report(5, ok, detail), detail


# 6 -------------------------------------------------------------------------------------------


def criterion_6():
    start = time.perf_counter()
    checked = 0
    bad = []
    for boxes, m in small_instances(3, 8, 3):
        st = BoxState(boxes, m)
        if not criterion_holds(st):
            continue
        checked += 1
        if brute_force_boxmaker(st, breaker="fewest").winner != "boxbreaker":
            bad.append((boxes, m))
    putback_bad = putback_preservation_counterexamples(3, 8, 3)
    elapsed = time.perf_counter() - start
    ok = not bad and not putback_bad and elapsed < 300
    return ok, (
        f"{checked} instances satisfy the criterion; RemoveBox counterexamples {len(bad)}, "
        f"PutBack preservation failures {len(putback_bad)}; {elapsed:.1f}s"
    )


def test_criterion_6_box_game():
    ok, detail = criterion_6()
    assert report(6, ok, detail), detail


# 7 -------------------------------------------------------------------------------------------


def criterion_7():
    n = 1000
    b = int(0.8 * n)
    H = parse_pattern("P4")
    wins = clean = 0
    for seed in range(100):
        mon = GBoxInvariantMonitor()
        tr = play_game(GameConfig(n, b, target="minor:P4"), BoxMinorMaker(H, "0.2"), random_breaker(), [mon], seed=seed, record=False)
        if tr.winner == "maker":
            wins += 1
            clean += mon.report()["violations"] == 0
    ok = wins >= 90 and clean == wins
    return ok, f"win rate {wins / 100:.2f} (need >= 0.9); monitor clean in {clean}/{wins} winning games"


def test_criterion_7_box_minor():
    ok, detail = criterion_7()
    assert report(7, ok, detail), detail


# 8 -------------------------------------------------------------------------------------------


def criterion_8(games=20):
    start = time.perf_counter()
    n = 5000
    b = int(0.99 * n)
    no_path = small = phase1_clean = 0
    for seed in range(games):
        mon = Invariant2Monitor()
        brk = TwoPhaseP11Breaker()
        tr = play_game(GameConfig(n, b, early_stop=False), random_maker(), brk, [mon], seed=seed, record=False)
        rep = mon.report()
        no_path += not longest_path_at_least(maker_graph_of(tr), 10)
        small += rep["boundary_max_component"] <= 4
        phase1_clean += rep["phase1_j_free_rounds"] == 0 and rep["phase1_rounds_checked"] == brk.state.phase1_rounds
    elapsed = time.perf_counter() - start
    ok = no_path >= 18 and small >= 18 and phase1_clean == games and elapsed < 900
    return ok, (
        f"Breaker wins {no_path}/{games}, boundary components <= 4 in {small}/{games}, "
        f"phase-1 J clean in {phase1_clean}/{games}; {elapsed:.0f}s"
    )


@pytest.mark.slow
def test_criterion_8_two_phase():
    ok, detail = criterion_8()
    assert report(8, ok, detail), detail


# 9 -------------------------------------------------------------------------------------------


def criterion_9():
    n = 3000
    b = int(0.7 * n / 3)
    cap = default_degree_cap(n)
    structural = kept = 0
    for seed in range(20):
        tr = play_game(GameConfig(n, b, early_stop=False), random_maker(), random_breaker(), seed=seed)
        mp = mprime_filter(tr, 5, cap=cap)
        structural += girth(mp) >= 5 and mp.max_degree() <= cap
        kept += mp.num_edges >= 0.95 * len(tr.maker_edges)
    ok = structural == 20 and kept >= 18
    return ok, f"cap={cap}: girth >= 5 and degree <= cap in {structural}/20; e(M') >= 0.95 e(M) in {kept}/20"


def test_criterion_9_mprime():
    ok, detail = criterion_9()
    assert report(9, ok, detail), detail


# 10 ------------------------------------------------------------------------------------------


def criterion_10():
    hosts, minor_bad = atlas_minor_discrepancies()
    matching_bad = matching_discrepancies(500)
    path_bad = path_discrepancies(500)
    crit_bad = criterion_discrepancies(10_000)
    ok = hosts == 996 and not minor_bad and matching_bad == path_bad == crit_bad == 0
    return ok, (
        f"minor {len(minor_bad)} on {hosts} hosts, matching {matching_bad}, path {path_bad}, "
        f"criterion {crit_bad} discrepancies"
    )


@pytest.mark.slow
def test_criterion_10_oracles():
    ok, detail = criterion_10()
    assert report(10, ok, detail), detail


# 11 ------------------------------------------------------------------------------------------


def criterion_11():
    kw = dict(n=60, biases=[1, 5, 20, 80], breaker="degree-cap:k=3", target="minor:P4", games=40, seed=2024, monitors=["pair-process"])
    first = csv_text(bias_sweep(ExperimentSpec(**kw, threads=1)))
    again = csv_text(bias_sweep(ExperimentSpec(**kw, threads=1)))
    threaded = csv_text(bias_sweep(ExperimentSpec(**kw, threads=3)))
    ok = first == again == threaded
    return ok, f"rerun identical {first == again}, 3 workers identical {first == threaded}"


def test_criterion_11_reproducibility():
    ok, detail = criterion_11()
    assert report(11, ok, detail), detail


if __name__ == "__main__":
    failed = 0
    for i, fn in enumerate(
        [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8, criterion_9, criterion_10, criterion_11],
        start=1,
    ):
        ok, detail = fn()
        failed += not report(i, ok, detail)
    sys.exit(1 if failed else 0)
