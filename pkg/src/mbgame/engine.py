"""The (1:b) game loop, transcripts and replay.

Maker moves first. In round ``t`` Maker claims one free edge ``e_t``; monitors
see the board; the target is checked if early stopping is on; then Breaker
claims ``min(b, free)`` edges. A short Breaker block is padded with uniformly
random free edges by the engine and the round is flagged.
"""

import io
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .board import BREAKER, MAKER, PLAYER_CODES, PLAYER_FROM_CODE, Board, num_edges
from .errors import (
    AlreadyClaimed,
    CorruptTranscript,
    InvalidConfig,
    InvalidEdge,
    MonitorViolation,
    StrategyFault,
)
from .targets import parse_target

RNG_ALGORITHM = "numpy.PCG64/SeedSequence.spawn(3)"
FORMAT_TAG = "mbgame v1"


@dataclass
class GameConfig:
    n: int
    b: int
    early_stop: bool = True
    target: str = "none"
    debug: bool = False
    abort_on_violation: bool = False

    def __post_init__(self):
        if self.n < 2:
            raise InvalidConfig(f"n must be >= 2, got {self.n}")
        if self.b < 1:
            raise InvalidConfig(f"b must be >= 1, got {self.b}")
        self.target_obj = parse_target(self.target)
        self.target = str(self.target_obj)


@dataclass
class GameContext:
    """What monitors get to look at; strategies only ever see the board view."""

    config: GameConfig
    board: Board
    maker: object
    breaker: object
    round: int = 0

    def violation(self, monitor, round_no, message):
        monitor.violations.append((round_no, message))
        if self.config.abort_on_violation:
            raise MonitorViolation(f"{monitor.name} round {round_no}: {message}")


@dataclass
class GameTranscript:
    n: int
    b: int
    seed: int
    maker_name: str
    breaker_name: str
    maker_edges: list
    breaker_blocks: Optional[list]
    winner: str
    decision_round: Optional[int]
    rounds_played: int
    target: str = "none"
    early_stop: bool = True
    events: list = field(default_factory=list)
    padded_rounds: list = field(default_factory=list)
    monitor_reports: dict = field(default_factory=dict)

    @property
    def maker_count(self):
        return len(self.maker_edges)

    @property
    def result(self):
        return self.winner, self.decision_round

    def moves(self):
        """Yield ``(round, player, u, v)`` in claim order."""
        if self.breaker_blocks is None:
            raise CorruptTranscript("transcript was recorded without Breaker moves")
        for t, (u, v) in enumerate(self.maker_edges, start=1):
            yield t, MAKER, u, v
            if t - 1 < len(self.breaker_blocks):
                for x, y in self.breaker_blocks[t - 1]:
                    yield t, BREAKER, int(x), int(y)

    def to_text(self):
        out = io.StringIO()
        out.write(
            f"{FORMAT_TAG} n={self.n} b={self.b} seed={self.seed} "
            f"maker={self.maker_name} breaker={self.breaker_name}\n"
        )
        for t, player, u, v in self.moves():
            out.write(f"{t} {PLAYER_CODES[player]} {u} {v}\n")
        when = "end" if self.decision_round is None else str(self.decision_round)
        out.write(f"result {self.winner} {when}\n")
        return out.getvalue()

    def save(self, path):
        with open(path, "w", encoding="ascii", newline="\n") as fh:
            fh.write(self.to_text())


def _parse_header(line):
    if not line.startswith(FORMAT_TAG + " "):
        raise CorruptTranscript(f"bad header: {line!r}")
    fields = {}
    for tok in line[len(FORMAT_TAG) + 1 :].split():
        key, sep, val = tok.partition("=")
        if not sep:
            raise CorruptTranscript(f"bad header token {tok!r}")
        fields[key] = val
    try:
        return int(fields["n"]), int(fields["b"]), int(fields["seed"]), fields["maker"], fields["breaker"]
    except (KeyError, ValueError) as exc:
        raise CorruptTranscript(f"incomplete header: {line!r}") from exc


def parse_transcript(text):
    """Parse the line format back into a :class:`GameTranscript` (structure only)."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(lines) < 2:
        raise CorruptTranscript("transcript too short")
    n, b, seed, maker_name, breaker_name = _parse_header(lines[0])
    last = lines[-1].split()
    if len(last) != 3 or last[0] != "result" or last[1] not in ("maker", "breaker"):
        raise CorruptTranscript(f"bad result line {lines[-1]!r}")
    if last[2] == "end":
        decision = None
    else:
        try:
            decision = int(last[2])
        except ValueError as exc:
            raise CorruptTranscript(f"bad decision round {last[2]!r}") from exc
    maker_edges, blocks = [], []
    for ln in lines[1:-1]:
        parts = ln.split()
        if len(parts) != 4 or parts[1] not in PLAYER_FROM_CODE:
            raise CorruptTranscript(f"bad move line {ln!r}")
        try:
            t, u, v = int(parts[0]), int(parts[2]), int(parts[3])
        except ValueError as exc:
            raise CorruptTranscript(f"bad move line {ln!r}") from exc
        if PLAYER_FROM_CODE[parts[1]] == MAKER:
            if t != len(maker_edges) + 1:
                raise CorruptTranscript(f"Maker move out of order at round {t}")
            maker_edges.append((u, v))
            blocks.append([])
        else:
            if not maker_edges or t != len(maker_edges):
                raise CorruptTranscript(f"Breaker move out of order at round {t}")
            blocks[-1].append((u, v))
    while blocks and not blocks[-1]:
        blocks.pop()
    return GameTranscript(
        n=n,
        b=b,
        seed=seed,
        maker_name=maker_name,
        breaker_name=breaker_name,
        maker_edges=maker_edges,
        breaker_blocks=blocks,
        winner=last[1],
        decision_round=decision,
        rounds_played=len(maker_edges),
    )


def read_transcript(path):
    with open(path, encoding="ascii") as fh:
        return parse_transcript(fh.read())


def replay(transcript):
    """Rebuild the final board, re-checking alternation and block sizes."""
    tr = transcript
    if tr.breaker_blocks is None:
        raise CorruptTranscript("transcript has no Breaker moves")
    try:
        board = Board(tr.n)
    except InvalidConfig as exc:
        raise CorruptTranscript(str(exc)) from exc
    if tr.b < 1:
        raise CorruptTranscript("bias must be positive")
    rounds = len(tr.maker_edges)
    if len(tr.breaker_blocks) > rounds:
        raise CorruptTranscript("more Breaker blocks than Maker moves")
    for t, e in enumerate(tr.maker_edges, start=1):
        if board.free_count == 0:
            raise CorruptTranscript(f"Maker move in round {t} on a full board")
        try:
            board.claim(MAKER, e)
        except (AlreadyClaimed, InvalidEdge) as exc:
            raise CorruptTranscript(f"round {t} Maker: {exc}") from exc
        block = tr.breaker_blocks[t - 1] if t - 1 < len(tr.breaker_blocks) else []
        expected = min(tr.b, board.free_count)
        final = t == rounds
        if len(block) != expected:
            stopped = final and not block and tr.winner == "maker" and tr.decision_round == t
            if not stopped:
                raise CorruptTranscript(f"round {t}: Breaker block of {len(block)} edges, expected {expected}")
        for x, y in block:
            try:
                board.claim(BREAKER, (int(x), int(y)))
            except (AlreadyClaimed, InvalidEdge) as exc:
                raise CorruptTranscript(f"round {t} Breaker: {exc}") from exc
        if final and board.free_count and tr.decision_round is None:
            raise CorruptTranscript("game ends before the board is full without a decision")
    if tr.decision_round is not None and tr.decision_round != rounds:
        raise CorruptTranscript("decision round does not match the last round")
    return board


# -- the game loop -----------------------------------------------------------------


def spawn_rngs(seed):
    """Independent generators for Maker, Breaker and the engine."""
    ss = np.random.SeedSequence(int(seed))
    return [np.random.Generator(np.random.PCG64(s)) for s in ss.spawn(3)]


def _check_maker(board, move, t):
    try:
        e = board.as_id(move)
    except (InvalidEdge, TypeError, ValueError) as exc:
        raise StrategyFault("maker", t, f"invalid edge {move!r}") from exc
    u, v = board.endpoints(e)
    if board.owner[u, v] != 0:
        raise StrategyFault("maker", t, f"edge ({u}, {v}) is not free")
    return e


def _check_block(board, block, budget, t):
    if block is None:
        return np.empty(0, dtype=np.int64)
    if isinstance(block, np.ndarray) and block.ndim == 1:
        ids = block.astype(np.int64)
    else:
        try:
            ids = np.fromiter((board.as_id(x) for x in block), dtype=np.int64)
        except (InvalidEdge, TypeError, ValueError) as exc:
            raise StrategyFault("breaker", t, f"invalid edge in block: {exc}") from exc
    if ids.size > budget:
        raise StrategyFault("breaker", t, f"block of {ids.size} edges exceeds budget {budget}")
    if ids.size == 0:
        return ids
    if ids.min() < 0 or ids.max() >= board.num_edges:
        raise StrategyFault("breaker", t, "edge id out of range")
    us, vs = board.endpoints_many(ids)
    if (board.owner[us, vs] != 0).any():
        raise StrategyFault("breaker", t, "block contains a claimed edge")
    if np.unique(ids).size != ids.size:
        raise StrategyFault("breaker", t, "block repeats an edge")
    return ids


def play_game(config, maker, breaker, monitors=(), seed=0, record=True):
    """Play one game and return its :class:`GameTranscript`."""
    board = Board(config.n)
    view = board.view()
    target = config.target_obj
    maker_rng, breaker_rng, engine_rng = spawn_rngs(seed)
    ctx = GameContext(config, board, maker, breaker)
    maker.on_game_start(config, view, maker_rng)
    breaker.on_game_start(config, view, breaker_rng)
    for mon in monitors:
        mon.attach(ctx)

    maker_edges = []
    blocks = [] if record else None
    padded = []
    winner, decision = "breaker", None
    t = 0
    while board.free_count:
        t += 1
        ctx.round = maker.round = breaker.round = t
        e = _check_maker(board, maker.maker_move(view, maker_rng), t)
        edge = board.claim(MAKER, e)
        maker_edges.append(edge)
        breaker.on_opponent_move([edge])
        if config.debug:
            board.check_invariants()
        for mon in monitors:
            mon.after_maker(ctx, t, edge)
        if config.early_stop and target.check_after(board, edge):
            winner, decision = "maker", t
            break
        if not board.free_count:
            break
        budget = min(config.b, board.free_count)
        ids = _check_block(board, breaker.breaker_block(view, edge, budget, breaker_rng), budget, t)
        board.claim_many(BREAKER, ids)
        if ids.size < budget:
            extra = board.sample_free_edges(engine_rng, budget - ids.size)
            board.claim_many(BREAKER, extra)
            ids = np.concatenate([ids, extra])
            padded.append(t)
        if config.debug:
            board.check_invariants()
        if record:
            us, vs = board.endpoints_many(ids)
            blocks.append(np.stack([us, vs], axis=1))
        block_pairs = None
        if monitors or maker.wants_opponent_moves:
            us, vs = board.endpoints_many(ids)
            block_pairs = list(zip(us.tolist(), vs.tolist()))
        maker.on_opponent_move(block_pairs)
        for mon in monitors:
            mon.after_breaker(ctx, t, block_pairs)

    if decision is None and not config.early_stop:
        winner = "maker" if target.holds(board.maker_graph()) else "breaker"
    for mon in monitors:
        mon.finish(ctx)
    events = [(t_, "maker", kind, msg) for t_, kind, msg in maker.events]
    events += [(t_, "breaker", kind, msg) for t_, kind, msg in breaker.events]
    events.sort(key=lambda ev: ev[0])
    return GameTranscript(
        n=config.n,
        b=config.b,
        seed=int(seed),
        maker_name=maker.name,
        breaker_name=breaker.name,
        maker_edges=maker_edges,
        breaker_blocks=blocks,
        winner=winner,
        decision_round=decision,
        rounds_played=t,
        target=config.target,
        early_stop=config.early_stop,
        events=events,
        padded_rounds=padded,
        monitor_reports={mon.name: mon.report() for mon in monitors},
    )


def final_maker_edge_count(n, b):
    """Maker's edge total when the whole board is played out."""
    return -(-num_edges(n) // (b + 1))
