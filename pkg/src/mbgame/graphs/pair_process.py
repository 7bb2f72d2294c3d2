"""Inductive matching / cherry process over Maker's edge sequence.

``C`` is a family of vertex-disjoint edges, ``D`` a family of vertex-disjoint
paths with two edges (cherries). Each new Maker edge either joins ``C``, pairs
up with a ``C`` edge it touches to form a cherry, or is ignored when it touches
``D``.
"""

from dataclasses import dataclass, field

from ..errors import CorruptState


def _canon(e):
    u, v = e
    return (u, v) if u < v else (v, u)


@dataclass
class PairProcessState:
    C: set = field(default_factory=set)
    paths: list = field(default_factory=list)
    c_at: dict = field(default_factory=dict)
    d_vertices: set = field(default_factory=set)
    steps: int = 0

    @property
    def D(self):
        return {e for pair in self.paths for e in pair}

    @property
    def d_size(self):
        """Number of edges in D (twice the number of cherries)."""
        return 2 * len(self.paths)

    def copy(self):
        return PairProcessState(set(self.C), list(self.paths), dict(self.c_at), set(self.d_vertices), self.steps)


def invariant_errors(state):
    errors = []
    seen = {}
    for e in state.C:
        for x in e:
            if x in seen:
                errors.append(f"C is not a matching at vertex {x}")
            seen[x] = e
    if seen != state.c_at:
        errors.append("C vertex index out of sync")
    d_seen = set()
    for a, b in state.paths:
        shared = set(a) & set(b)
        if len(shared) != 1 or a == b:
            errors.append(f"{a}, {b} is not a path with two edges")
        verts = set(a) | set(b)
        if verts & d_seen:
            errors.append(f"cherries overlap at {verts & d_seen}")
        d_seen |= verts
    if d_seen != state.d_vertices:
        errors.append("D vertex index out of sync")
    if d_seen & set(seen):
        errors.append("C and D share a vertex")
    return errors


def pair_process_step(state, e, validate=True):
    """Advance the process by Maker edge ``e``; mutates and returns ``state``."""
    if validate:
        errors = invariant_errors(state)
        if errors:
            raise CorruptState("; ".join(errors))
    u, v = _canon(e)
    if (u, v) in state.C:
        raise CorruptState(f"edge {(u, v)} is already in C")
    state.steps += 1
    if u in state.d_vertices or v in state.d_vertices:
        return state
    hit_u = state.c_at.get(u)
    hit_v = state.c_at.get(v)
    if hit_u is None and hit_v is None:
        state.C.add((u, v))
        state.c_at[u] = state.c_at[v] = (u, v)
        return state
    partner = hit_u if hit_u is not None else hit_v
    for old in {hit_u, hit_v} - {None}:
        state.C.discard(old)
        for x in old:
            del state.c_at[x]
    state.paths.append((partner, (u, v)))
    state.d_vertices.update(partner)
    state.d_vertices.update((u, v))
    return state
