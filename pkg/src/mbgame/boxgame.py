"""The box game: BoxMaker removes ``m`` coins per round, BoxBreaker answers.

In the RemoveBox variant BoxBreaker then discards a whole box; in the PutBack
variant he puts the ``m`` removed coins back into one box. BoxMaker wins as
soon as his removal empties a box.
"""

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import GameOver, InvalidConfig, OracleTooLarge, PolicyFault


class Variant(str, enum.Enum):
    REMOVE = "remove"
    PUTBACK = "putback"


@lru_cache(maxsize=None)
def harmonic(i):
    """h_i = 1 + 1/2 + ... + 1/i as an exact rational (h_0 = 0)."""
    if i < 0:
        raise ValueError("harmonic index must be >= 0")
    if i == 0:
        return Fraction(0)
    return harmonic(i - 1) + Fraction(1, i)


def harmonic_table(k):
    return [harmonic(i) for i in range(1, k + 1)]


@dataclass
class BoxState:
    boxes: list
    m: int
    variant: Variant = Variant.REMOVE

    def __post_init__(self):
        self.boxes = [int(a) for a in self.boxes]
        self.variant = Variant(self.variant)
        if any(a < 0 for a in self.boxes):
            raise InvalidConfig("coin counts must be non-negative")
        if self.m < 1:
            raise InvalidConfig(f"bias m must be >= 1, got {self.m}")

    @property
    def k(self):
        return len(self.boxes)

    def copy(self):
        return BoxState(list(self.boxes), self.m, self.variant)


def criterion_holds(state):
    """True iff every nonempty set S of boxes holds more than |S| h_|S| m coins.

    The bound depends only on |S|, so it suffices to test the |S| smallest
    boxes for each size. Comparisons are exact.
    """
    if not state.boxes:
        return True
    total = 0
    for s, a in enumerate(sorted(state.boxes), start=1):
        total += a
        if not total > s * harmonic(s) * state.m:
            return False
    return True


def fewest_coins_boxbreaker(state):
    """Index of the box with the fewest coins, lowest index on ties."""
    if not state.boxes:
        raise GameOver("no boxes left")
    return min(range(len(state.boxes)), key=lambda i: (state.boxes[i], i))


# -- BoxMaker removal policies ------------------------------------------------------


def greedy_min_policy(state):
    """Take coins from the smallest box first, spilling to the next smallest."""
    need = min(state.m, sum(state.boxes))
    out = [0] * state.k
    for i in sorted(range(state.k), key=lambda i: (state.boxes[i], i)):
        take = min(need, state.boxes[i])
        out[i] = take
        need -= take
        if not need:
            break
    return out


def spread_even_policy(state):
    """Spread the removal evenly over the boxes, extra coins to the smallest boxes."""
    need = min(state.m, sum(state.boxes))
    out = [0] * state.k
    while need:
        live = [i for i in sorted(range(state.k), key=lambda i: (state.boxes[i], i)) if state.boxes[i] > out[i]]
        share, extra = divmod(need, len(live))
        for j, i in enumerate(live):
            take = min(share + (1 if j < extra else 0), state.boxes[i] - out[i])
            out[i] += take
            need -= take
    return out


class OraclePolicy:
    """Optimal BoxMaker play read off the exhaustive game solver."""

    def __init__(self, node_budget=2_000_000):
        self.node_budget = node_budget

    def __call__(self, state):
        solver = _Solver(state.m, state.variant, "fewest", self.node_budget)
        move = solver.best_move(tuple(state.boxes))
        if move is None:
            return greedy_min_policy(state)
        return list(move)


POLICIES = {"greedy": greedy_min_policy, "spread": spread_even_policy, "oracle": OraclePolicy()}


# -- playing -----------------------------------------------------------------------------


@dataclass
class BoxOutcome:
    winner: str  # "boxmaker", "boxbreaker" or "survived"
    round: Optional[int]
    trace: list = field(default_factory=list)


def _check_removal(state, removal):
    if len(removal) != state.k:
        raise PolicyFault(f"removal {removal} has wrong length for {state.k} boxes")
    need = min(state.m, sum(state.boxes))
    if any(int(x) != x or x < 0 for x in removal):
        raise PolicyFault(f"removal {removal} is not a list of non-negative integers")
    if sum(removal) != need:
        raise PolicyFault(f"removal takes {sum(removal)} coins, must take {need}")
    if any(x > a for x, a in zip(removal, state.boxes)):
        raise PolicyFault(f"removal {removal} overdraws {state.boxes}")


def play_box_game(state, boxmaker, rounds=1000):
    """Fewest-coins BoxBreaker against the ``boxmaker`` removal policy."""
    st = state.copy()
    trace = []
    if any(a == 0 for a in st.boxes):
        return BoxOutcome("boxmaker", 0, trace)
    for t in range(1, rounds + 1):
        if not st.boxes:
            return BoxOutcome("boxbreaker", None, trace)
        removal = boxmaker(st.copy())
        _check_removal(st, removal)
        st.boxes = [a - x for a, x in zip(st.boxes, removal)]
        taken = sum(removal)
        if any(a == 0 for a in st.boxes):
            trace.append({"round": t, "removal": list(removal), "boxes": list(st.boxes), "reply": None})
            return BoxOutcome("boxmaker", t, trace)
        i = fewest_coins_boxbreaker(st)
        if st.variant is Variant.REMOVE:
            del st.boxes[i]
        else:
            st.boxes[i] += taken
        trace.append({"round": t, "removal": list(removal), "boxes": list(st.boxes), "reply": i})
        if st.variant is Variant.REMOVE and not st.boxes:
            return BoxOutcome("boxbreaker", None, trace)
    return BoxOutcome("survived", None, trace)


# -- exhaustive solver ----------------------------------------------------------------------


def removals(boxes, coins):
    """Every way to take ``coins`` coins from ``boxes`` (per-box caps respected)."""
    k = len(boxes)
    if k == 0:
        if coins == 0:
            yield ()
        return

    def rec(i, left):
        if i == k - 1:
            if left <= boxes[i]:
                yield (left,)
            return
        for x in range(min(left, boxes[i]) + 1):
            for rest in rec(i + 1, left - x):
                yield (x,) + rest

    yield from rec(0, coins)


@dataclass(frozen=True)
class BoxValue:
    winner: str  # "boxmaker", "boxbreaker" or "survived"
    round: Optional[int]


class _Solver:
    def __init__(self, m, variant, breaker, node_budget):
        if breaker not in ("optimal", "fewest"):
            raise InvalidConfig(f"unknown BoxBreaker mode {breaker!r}")
        self.m = m
        self.variant = Variant(variant)
        self.breaker = breaker
        self.node_budget = node_budget
        self.nodes = 0
        self.memo = {}

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise OracleTooLarge(f"box game tree exceeds {self.node_budget} nodes")

    def _replies(self, after, taken):
        """Positions BoxBreaker can move to from the sorted tuple ``after``."""
        if self.breaker == "fewest":
            choices = [0]
        else:
            choices = sorted({after.index(a) for a in after})
        out = []
        for i in choices:
            if self.variant is Variant.REMOVE:
                out.append(after[:i] + after[i + 1 :])
            else:
                nxt = list(after)
                nxt[i] += taken
                out.append(tuple(sorted(nxt)))
        return out

    def remove_value(self, boxes, depth):
        """Rounds BoxMaker needs to win under best play, or None if he cannot."""
        if not boxes:
            return None
        if depth is not None and depth <= 0:
            return None
        key = (boxes, depth)
        if key in self.memo:
            return self.memo[key]
        self._tick()
        coins = min(self.m, sum(boxes))
        best = None
        for rem in removals(boxes, coins):
            after = tuple(a - x for a, x in zip(boxes, rem))
            if 0 in after:
                best = 1
                break
            after = tuple(sorted(after))
            worst = 0
            for nxt in self._replies(after, coins):
                v = self.remove_value(nxt, None if depth is None else depth - 1)
                if v is None:
                    worst = None
                    break
                worst = max(worst, v)
            if worst is not None and (best is None or worst + 1 < best):
                best = worst + 1
        self.memo[key] = best
        return best

    def putback_value(self, start, depth):
        """Attractor computation over the finite PutBack position graph."""
        start = tuple(sorted(start))
        if 0 in start:
            return 0
        positions = {start: None}
        frontier = [start]
        edges = {}
        while frontier:
            nxt_frontier = []
            for pos in frontier:
                self._tick()
                coins = min(self.m, sum(pos))
                options = []
                for rem in removals(pos, coins):
                    after = tuple(a - x for a, x in zip(pos, rem))
                    if 0 in after:
                        options = "win"
                        break
                    replies = self._replies(tuple(sorted(after)), coins)
                    options.append(replies)
                    for r in replies:
                        if r not in positions:
                            positions[r] = None
                            nxt_frontier.append(r)
                edges[pos] = options
            frontier = nxt_frontier
        rank = {p: 1 for p, opts in edges.items() if opts == "win"}
        level = 1
        while depth is None or level < depth:
            level += 1
            added = {}
            for p, opts in edges.items():
                if p in rank or opts == "win":
                    continue
                if any(all(r in rank for r in replies) for replies in opts):
                    added[p] = level
            if not added:
                break
            rank.update(added)
        v = rank.get(start)
        if depth is not None and v is not None and v > depth:
            return None
        return v

    def value(self, boxes, depth):
        boxes = tuple(boxes)
        if 0 in boxes:
            return 0
        if self.variant is Variant.REMOVE:
            return self.remove_value(tuple(sorted(boxes)), depth)
        return self.putback_value(boxes, depth)

    def best_move(self, boxes):
        """An optimal removal for BoxMaker (in the original box order), or None if lost."""
        coins = min(self.m, sum(boxes))
        best, best_v = None, None
        for rem in removals(boxes, coins):
            after = tuple(a - x for a, x in zip(boxes, rem))
            if 0 in after:
                return rem
            worst = 0
            for nxt in self._replies(tuple(sorted(after)), coins):
                v = self.value(nxt, None)
                if v is None:
                    worst = None
                    break
                worst = max(worst, v)
            if worst is not None and (best_v is None or worst < best_v):
                best, best_v = rem, worst
        return best


def brute_force_boxmaker(state, depth=None, breaker="optimal", node_budget=2_000_000):
    """Exact value of the box game under optimal BoxMaker play.

    ``breaker`` is ``"optimal"`` (minimax over all BoxBreaker replies) or
    ``"fewest"`` (BoxBreaker fixed to the fewest-coins rule). ``depth`` caps
    the number of rounds. Raises OracleTooLarge past ``node_budget`` positions.
    """
    solver = _Solver(state.m, state.variant, breaker, node_budget)
    v = solver.value(state.boxes, depth)
    if v is not None:
        return BoxValue("boxmaker", v)
    if state.variant is Variant.REMOVE and depth is None:
        return BoxValue("boxbreaker", None)
    return BoxValue("survived" if state.variant is Variant.PUTBACK else "boxbreaker", None)


def small_instances(max_k=3, max_coins=8, max_m=3):
    """Every (boxes, m) with 1..max_k boxes of 0..max_coins coins, boxes as sorted tuples."""
    for m in range(1, max_m + 1):
        for k in range(1, max_k + 1):
            for boxes in itertools.combinations_with_replacement(range(max_coins + 1), k):
                yield boxes, m
