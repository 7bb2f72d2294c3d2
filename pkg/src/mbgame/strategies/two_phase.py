"""Two-phase Breaker that keeps a random Maker from building a path on eleven vertices.

Phase 1 (the first ``floor(0.03 n)`` rounds) keeps Maker's components tiny:
Breaker first clears every free edge inside ``J_t`` (the non-isolated
vertices), then takes edges between ``J_t`` and the isolated set ``I_t``
starting at the ``J_t`` vertices in the largest Maker components, and only
then random edges inside ``I_t``.

Phase 2 fixes ``I`` (isolated at the boundary) and ``J``. Inside ``I`` Maker's
graph is kept a union of stars with heads, and each star gets at most one
Maker edge to ``J``.
"""

from dataclasses import dataclass, field

import numpy as np

from ..board import FREE, MAKER
from .base import Strategy, take_random


@dataclass
class TwoPhaseState:
    phase: int = 1
    phase1_rounds: int = 0
    in_I: object = None  # bool mask over vertices, fixed at the boundary
    comp: dict = field(default_factory=dict)  # I vertex -> component id
    members: dict = field(default_factory=dict)  # component id -> list of vertices
    head: dict = field(default_factory=dict)  # component id -> head vertex
    ij_edges: dict = field(default_factory=dict)  # component id -> Maker edges to J
    nontrivial_heads: object = None  # bool mask: heads of I-components with >= 2 vertices
    boundary_max_component: int = 0


class _DSU:
    def __init__(self, n):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]

    def comp_size(self, x):
        return self.size[self.find(x)]


class TwoPhaseP11Breaker(Strategy):
    name = "two-phase-p11"

    def __init__(self, phase1_frac=0.03):
        super().__init__()
        self.phase1_frac = phase1_frac
        if phase1_frac != 0.03:
            self.name = f"two-phase-p11:phase1={phase1_frac:g}"

    def on_game_start(self, config, view, rng):
        super().on_game_start(config, view, rng)
        n = config.n
        self.state = TwoPhaseState(phase1_rounds=int(self.phase1_frac * n))
        self.dsu = _DSU(n)
        self.n = n
        if self.state.phase1_rounds == 0:
            self._enter_phase2(view)

    # -- bookkeeping ------------------------------------------------------------

    def _enter_phase2(self, view):
        st = self.state
        st.phase = 2
        st.in_I = np.asarray(view.degree[MAKER] == 0).copy()
        st.nontrivial_heads = np.zeros(self.n, dtype=bool)
        for v in np.flatnonzero(st.in_I).tolist():
            st.comp[v] = v
            st.members[v] = [v]
            st.head[v] = v
            st.ij_edges[v] = 0
        sizes = [self.dsu.comp_size(v) for v in range(self.n)]
        st.boundary_max_component = max(sizes) if sizes else 0

    def component_edges(self, view, members):
        """Ids of the free edges with at least one endpoint in ``members``."""
        idx = np.asarray(members, dtype=np.int64)
        rows, cols = np.nonzero(view.owner[idx] == FREE)
        if rows.size == 0:
            return np.empty(0, dtype=np.int64)
        return np.unique(view.edge_ids(idx[rows], cols))

    # -- phase 1 ------------------------------------------------------------------

    def _phase1(self, view, budget, rng):
        owner = view.owner
        deg_m = view.degree[MAKER]
        J = np.flatnonzero(deg_m > 0)
        I_mask = deg_m == 0
        chosen = []
        left = budget

        # (a) every free edge inside J
        sub = owner[np.ix_(J, J)] == FREE
        a, b = np.nonzero(np.triu(sub, 1))
        inside = view.edge_ids(J[a], J[b])
        if inside.size > left:
            self.event("shortfall", f"{inside.size} free edges inside J, budget {left}")
            inside = inside[:left]
        chosen.append(inside)
        left -= inside.size

        # (b) J-I edges, J endpoint from the largest Maker components first
        if left and J.size:
            free_I = (owner[J] == FREE) & I_mask[None, :]
            counts = free_I.sum(axis=1)
            sizes = np.array([self.dsu.comp_size(int(x)) for x in J], dtype=np.int64)
            for size in sorted(set(sizes[counts > 0].tolist()), reverse=True):
                if not left:
                    break
                tier = np.flatnonzero((sizes == size) & (counts > 0))
                cap = int(counts[tier].sum())
                if cap <= left:
                    draws = counts[tier].copy()
                else:
                    draws = self._tie_draws(counts[tier], left, rng)
                for row, d in zip(tier.tolist(), draws.tolist()):
                    if d == 0:
                        continue
                    nbrs = np.flatnonzero(free_I[row])
                    picked = take_random(rng, nbrs, d)
                    chosen.append(view.edge_ids(np.full(picked.size, J[row]), picked))
                left -= int(draws.sum())

        # (c) random edges inside I
        if left:
            chosen.append(self._random_inside(view, I_mask, left, rng))
        return np.concatenate(chosen) if chosen else np.empty(0, dtype=np.int64)

    @staticmethod
    def _tie_draws(counts, total, rng):
        """How many edges each tied vertex gives up when ``total`` are taken one at a time.

        Each step picks a vertex uniformly among those that still have free
        edges; exhausted vertices are skipped by rejection.
        """
        counts = counts.astype(np.int64).copy()
        draws = np.zeros_like(counts)
        alive = list(range(counts.size))
        while total:
            batch = rng.integers(0, len(alive), size=max(16, 2 * total))
            dead = False
            for j in batch.tolist():
                i = alive[j]
                if counts[i] == 0:
                    dead = True
                    continue
                counts[i] -= 1
                draws[i] += 1
                total -= 1
                if counts[i] == 0:
                    dead = True
                if not total:
                    break
            if dead:
                alive = [i for i in alive if counts[i] > 0]
        return draws

    def _random_inside(self, view, mask, k, rng):
        """Up to ``k`` uniformly random free edges with both endpoints in ``mask``."""
        picked = set()
        for _ in range(8):
            cand = view.sample_free_edges(rng, max(4 * k, 64))
            if cand.size == 0:
                break
            us, vs = view.endpoints_many(cand)
            for e in cand[mask[us] & mask[vs]].tolist():
                picked.add(e)
                if len(picked) == k:
                    return np.fromiter(picked, dtype=np.int64)
        verts = np.flatnonzero(mask)
        a, b = np.nonzero(np.triu(view.owner[np.ix_(verts, verts)] == FREE, 1))
        all_ids = view.edge_ids(verts[a], verts[b])
        rest = np.setdiff1d(all_ids, np.fromiter(picked, dtype=np.int64))
        extra = take_random(rng, rest, k - len(picked))
        return np.concatenate([np.fromiter(picked, dtype=np.int64), extra])

    # -- phase 2 ------------------------------------------------------------------

    def _free_I_degree(self, view, x):
        return int(((view.owner[x] == FREE) & self.state.in_I).sum())

    def _phase2(self, view, edge, budget, rng):
        st = self.state
        a, b = edge
        in_I = st.in_I
        if in_I[a] and in_I[b]:
            return self._inside_I(view, a, b, budget, rng)
        if in_I[a] or in_I[b]:
            x = a if in_I[a] else b
            c = st.comp[x]
            st.ij_edges[c] += 1
            if st.ij_edges[c] > 1:
                self.event("invariant-broken", f"I-component of {x} has {st.ij_edges[c]} edges to J")
            ids = self.component_edges(view, st.members[c])
            if ids.size > budget:
                self.event("shortfall", f"I-component of {x} has {ids.size} free edges, budget {budget}")
                ids = ids[:budget]
            return ids
        self.event("j-edge", f"Maker edge ({a}, {b}) inside J")
        return np.empty(0, dtype=np.int64)

    def _inside_I(self, view, a, b, budget, rng):
        st = self.state
        ca, cb = st.comp[a], st.comp[b]
        a_iso, b_iso = len(st.members[ca]) == 1, len(st.members[cb]) == 1
        if a_iso and b_iso:
            da, db = self._free_I_degree(view, a), self._free_I_degree(view, b)
            u, v = (a, b) if (da, a) < (db, b) else (b, a)
        elif a_iso:
            u, v = a, b
        elif b_iso:
            u, v = b, a
        else:
            self.event("invariant-broken", f"Maker edge ({a}, {b}) joins two non-trivial I-components")
            u, v = (a, b) if len(st.members[ca]) <= len(st.members[cb]) else (b, a)
        owner = view.owner
        cu, cv = st.comp[u], st.comp[v]

        at_u = np.flatnonzero((owner[u] == FREE) & st.in_I)
        heads = st.nontrivial_heads.copy()
        heads[st.head[cv]] = False
        at_v = np.flatnonzero((owner[v] == FREE) & heads)
        core = np.concatenate(
            [view.edge_ids(np.full(at_u.size, u), at_u), view.edge_ids(np.full(at_v.size, v), at_v)]
        )

        # merge u's component into v's
        if len(st.members[cv]) == 1:
            st.head[cv] = v
        for x in st.members[cu]:
            st.comp[x] = cv
        st.members[cv].extend(st.members.pop(cu))
        st.ij_edges[cv] += st.ij_edges.pop(cu)
        old_head = st.head.pop(cu)
        st.nontrivial_heads[old_head] = False
        st.nontrivial_heads[st.head[cv]] = True

        if core.size >= budget:
            if core.size > budget:
                self.event("shortfall", f"needs {core.size} edges, budget {budget}")
            return core[:budget]
        rest = np.setdiff1d(self.component_edges(view, st.members[cv]), core)
        top = take_random(rng, rest, budget - core.size)
        return np.concatenate([core, top])

    # -- interface ------------------------------------------------------------------

    def breaker_block(self, view, last_maker_edge, budget, rng):
        a, b = last_maker_edge
        self.dsu.union(a, b)
        st = self.state
        if st.phase == 1:
            block = self._phase1(view, budget, rng)
            if self.round >= st.phase1_rounds:
                self._enter_phase2(view)
            return block
        return self._phase2(view, last_maker_edge, budget, rng)


def two_phase_p11_breaker(phase1_frac=0.03):
    return TwoPhaseP11Breaker(phase1_frac)
