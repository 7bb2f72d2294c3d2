"""Runtime checks of the invariants the strategies are supposed to maintain.

A monitor never changes the game. Violations are collected with their round
numbers; the engine only aborts on them when the config asks it to.
"""

import numpy as np

from ..board import BREAKER, FREE, MAKER
from ..errors import InvalidConfig
from ..graphs.pair_process import PairProcessState, invariant_errors, pair_process_step
from .box_minor import free_edges_at, potential_holds


class Monitor:
    name = "monitor"

    def __init__(self):
        self.violations = []
        self.stats = {}

    def attach(self, ctx):
        self.violations = []
        self.stats = {}

    def after_maker(self, ctx, round_no, edge):
        pass

    def after_breaker(self, ctx, round_no, block):
        pass

    def finish(self, ctx):
        pass

    def report(self):
        return {
            "violations": len(self.violations),
            "first_violation": self.violations[0][0] if self.violations else None,
            "messages": [f"round {t}: {msg}" for t, msg in self.violations[:10]],
            **self.stats,
        }


class DegreePotentialMonitor(Monitor):
    """d_B(v) >= min(d_M(v) * cap, n - 1 - d_M(v)) at every vertex after each Breaker block."""

    def __init__(self, k=None):
        super().__init__()
        self.k = k
        self.name = "degree-potential" if k is None else f"degree-potential:k={k}"

    def attach(self, ctx):
        super().attach(ctx)
        k = self.k if self.k is not None else getattr(ctx.breaker, "k", None)
        if k is None:
            raise InvalidConfig("degree-potential monitor needs k or a degree-cap Breaker")
        self.cap = ctx.config.n // (k - 1)
        self.stats["max_maker_degree"] = 0

    def after_breaker(self, ctx, round_no, block):
        deg = ctx.board.degree
        n = ctx.board.n
        need = np.minimum(deg[MAKER] * self.cap, n - 1 - deg[MAKER])
        bad = np.flatnonzero(deg[BREAKER] < need)
        if bad.size:
            v = int(bad[0])
            ctx.violation(self, round_no, f"vertex {v}: d_B={deg[BREAKER, v]} < {need[v]} ({bad.size} vertices)")

    def finish(self, ctx):
        self.stats["max_maker_degree"] = int(ctx.board.degree[MAKER].max())


class Invariant1Monitor(Monitor):
    """Before every Maker move: M is a union of stars centred on the Breaker's heads,
    and every free edge joins two heads, at least one of them isolated."""

    name = "invariant1"

    def attach(self, ctx):
        super().attach(ctx)
        if not hasattr(ctx.breaker, "heads"):
            raise InvalidConfig("invariant1 monitor needs a star-forcing Breaker")

    def after_breaker(self, ctx, round_no, block):
        msg = star_structure_errors(ctx.board, ctx.breaker.heads)
        if msg:
            ctx.violation(self, round_no, msg)


def star_structure_errors(board, heads):
    """First violated star condition as a message, or None."""
    deg_m = board.degree[MAKER]
    heads = np.asarray(heads, dtype=bool)
    non_heads = ~heads
    if (deg_m[non_heads] != 1).any():
        v = int(np.flatnonzero(non_heads & (deg_m != 1))[0])
        return f"non-head {v} has Maker degree {deg_m[v]}"
    for v in np.flatnonzero(non_heads).tolist():
        (w,) = board.maker_adj[v]
        if not heads[w]:
            return f"leaf {v} is attached to non-head {w}"
    free = board.owner == FREE
    if free[non_heads].any():
        v = int(np.flatnonzero(free[non_heads].any(axis=1))[0])
        return f"free edge at non-head {np.flatnonzero(non_heads)[v]}"
    busy = heads & (deg_m > 0)
    if free[np.ix_(busy, busy)].any():
        return "free edge between two non-isolated heads"
    return None


class GBoxInvariantMonitor(Monitor):
    """After each Maker move, the free-edge counts of the branch sets satisfy the
    potential bound on every ascending prefix."""

    name = "gbox-invariant"

    def attach(self, ctx):
        super().attach(ctx)
        if not hasattr(ctx.maker, "plan"):
            raise InvalidConfig("gbox-invariant monitor needs a box-minor Maker")
        self.stats["checks"] = 0
        self.stats["disjoint_connected"] = True

    def after_maker(self, ctx, round_no, edge):
        plan = ctx.maker.plan
        if not plan.branch_sets:
            return
        board = ctx.board
        f = [free_edges_at(board.owner, S) for S in plan.branch_sets]
        self.stats["checks"] += 1
        s = potential_holds(f, board.n, plan.eps, plan.k, round_no, plan.T)
        if s:
            ctx.violation(self, round_no, f"prefix of size {s} below bound, f={sorted(f)}")
        msg = branch_set_errors(board.maker_adj, plan.branch_sets)
        if msg:
            self.stats["disjoint_connected"] = False
            ctx.violation(self, round_no, msg)


def branch_set_errors(adj, branch_sets):
    seen = set()
    for i, S in enumerate(branch_sets):
        if seen & S:
            return f"branch set {i} overlaps an earlier one"
        seen |= S
        start = next(iter(S))
        reach = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y in S and y not in reach:
                    reach.add(y)
                    stack.append(y)
        if reach != S:
            return f"branch set {i} is not connected in M"
    return None


class PairProcessMonitor(Monitor):
    """Feeds Maker's edges to the C/D pair process and records when D gets going."""

    name = "pair-process"

    def __init__(self, validate_every=0):
        super().__init__()
        self.validate_every = validate_every

    def attach(self, ctx):
        super().attach(ctx)
        self.state = PairProcessState()
        self.stats.update(first_round_d2=None, d_size=0, c_size=0)

    def after_maker(self, ctx, round_no, edge):
        st = self.state
        before = st.d_size
        pair_process_step(st, edge, validate=False)
        if st.d_size < before:
            ctx.violation(self, round_no, "|D| decreased")
        if self.validate_every and round_no % self.validate_every == 0:
            errors = invariant_errors(st)
            if errors:
                ctx.violation(self, round_no, "; ".join(errors))
        if st.d_size >= 2 and self.stats["first_round_d2"] is None:
            self.stats["first_round_d2"] = round_no

    def finish(self, ctx):
        self.stats["d_size"] = self.state.d_size
        self.stats["c_size"] = len(self.state.C)


class Invariant2Monitor(Monitor):
    """Structure the two-phase Breaker maintains.

    During phase 1, no free edge may remain inside J_t after Breaker's block.
    At the boundary the whole I-side structure is checked; afterwards only the
    I-components touched by the round's Maker edge, since untouched components
    can only lose free edges.
    """

    name = "invariant2"

    def __init__(self, free_frac=0.98):
        super().__init__()
        self.free_frac = free_frac

    def attach(self, ctx):
        super().attach(ctx)
        if not hasattr(ctx.breaker, "state") or not hasattr(ctx.breaker.state, "in_I"):
            raise InvalidConfig("invariant2 monitor needs the two-phase Breaker")
        self.limit = self.free_frac * ctx.config.n
        self.stats.update(
            phase1_j_free_rounds=0,
            phase1_rounds_checked=0,
            boundary_max_component=None,
            boundary_max_free_degree_I=None,
            boundary_ok=None,
        )
        self.phase1_violations = 0
        self._boundary_done = False
        self._last = None

    def after_maker(self, ctx, round_no, edge):
        self._last = edge

    def after_breaker(self, ctx, round_no, block):
        st = ctx.breaker.state
        board = ctx.board
        if round_no <= st.phase1_rounds:
            self._check_phase1(ctx, round_no)
        if st.phase != 2:
            return
        if not self._boundary_done:
            self._boundary_done = True
            self._boundary(ctx, round_no)
            return
        dirty = {st.comp[x] for x in self._last if st.in_I[x]}
        for c in dirty:
            msg = self._component_errors(board, st, c)
            if msg:
                ctx.violation(self, round_no, msg)
        if not st.in_I[self._last[0]] and not st.in_I[self._last[1]]:
            ctx.violation(self, round_no, f"Maker edge {self._last} inside J")

    def _check_phase1(self, ctx, round_no):
        deg_m = ctx.board.degree[MAKER]
        J = np.flatnonzero(deg_m > 0)
        self.stats["phase1_rounds_checked"] += 1
        if (ctx.board.owner[np.ix_(J, J)] == FREE).any():
            self.stats["phase1_j_free_rounds"] += 1
            self.phase1_violations += 1
            ctx.violation(self, round_no, "free edge inside J after Breaker's block")

    def _boundary(self, ctx, round_no):
        board = ctx.board
        st = ctx.breaker.state
        sizes = [len(c) for c in board.maker_graph().components()]
        self.stats["boundary_max_component"] = max(sizes)
        I = np.flatnonzero(st.in_I)
        max_free = int(board.degree[FREE][I].max()) if I.size else 0
        self.stats["boundary_max_free_degree_I"] = max_free
        ok = max_free <= self.limit
        if not ok:
            ctx.violation(self, round_no, f"vertex in I with {max_free} free edges at the boundary")
        for c in list(st.members):
            msg = self._component_errors(board, st, c)
            if msg:
                ok = False
                ctx.violation(self, round_no, msg)
        # free edges inside I must join two heads, one of them isolated
        heads = np.zeros(board.n, dtype=bool)
        heads[list(st.head.values())] = True
        sub = board.owner[np.ix_(I, I)] == FREE
        iso = np.array([len(st.members[st.comp[x]]) == 1 for x in I.tolist()], dtype=bool)
        h = heads[I]
        if sub[~h].any() or sub[np.ix_(h & ~iso, h & ~iso)].any():
            ok = False
            ctx.violation(self, round_no, "free edge inside I not between a head and an isolated head")
        self.stats["boundary_ok"] = ok

    def _component_errors(self, board, st, c):
        members = st.members[c]
        head = st.head[c]
        in_I = st.in_I
        adj = board.maker_adj
        for x in members:
            inside = [y for y in adj[x] if in_I[y]]
            if x == head:
                if len(inside) != len(members) - 1:
                    return f"I-component headed by {head} is not a star on its head"
            elif inside != [head]:
                return f"I-component headed by {head} is not a star on its head"
        j_edges = sum(1 for x in members for y in adj[x] if not in_I[y])
        owner = board.owner
        idx = np.asarray(members)
        rows = owner[idx] == FREE
        nfree = int(rows.sum() - rows[:, idx].sum() // 2)
        if j_edges > 1:
            return f"I-component headed by {head} has {j_edges} Maker edges to J"
        if j_edges == 1 and nfree:
            return f"I-component headed by {head} has a J edge and {nfree} free edges"
        if nfree > self.limit:
            return f"I-component headed by {head} has {nfree} free edges"
        # free I-edges at members other than the head, or between busy heads
        if len(members) > 1:
            I_free = rows & in_I[None, :]
            leaves = [i for i, x in enumerate(members) if x != head]
            if I_free[leaves].any():
                return f"free I-edge at a leaf of the star headed by {head}"
            busy = np.zeros(board.n, dtype=bool)
            busy[[st.head[d] for d in st.members if len(st.members[d]) > 1]] = True
            if (owner[head] == FREE)[busy].any():
                return f"free edge between non-isolated heads at {head}"
        return None


MONITOR_NAMES = ("gbox-invariant", "invariant1", "invariant2", "pair-process", "degree-potential")


def make_monitor(spec):
    spec = spec.strip()
    name, _, arg = spec.partition(":")
    if name == "gbox-invariant":
        return GBoxInvariantMonitor()
    if name == "invariant1":
        return Invariant1Monitor()
    if name == "invariant2":
        return Invariant2Monitor()
    if name == "pair-process":
        return PairProcessMonitor()
    if name == "degree-potential":
        if not arg:
            return DegreePotentialMonitor()
        key, _, val = arg.partition("=")
        if key != "k" or not val.isdigit():
            raise InvalidConfig(f"bad monitor argument {arg!r}")
        return DegreePotentialMonitor(int(val))
    raise InvalidConfig(f"unknown monitor {spec!r}; known: {', '.join(MONITOR_NAMES)}")


def parse_monitors(text):
    if not text:
        return []
    return [make_monitor(tok) for tok in text.split(",") if tok.strip()]

