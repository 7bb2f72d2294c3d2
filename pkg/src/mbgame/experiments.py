"""Monte Carlo harness: win rates per bias, sweeps, threshold bisection, CSV/JSON output."""

import csv
import io
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

from scipy.stats import binomtest

from . import __version__
from .engine import RNG_ALGORITHM, GameConfig, play_game
from .errors import InvalidConfig, MonotoneAssumptionFailed
from .strategies.monitors import parse_monitors
from .strategies.registry import make_strategy

MASK64 = (1 << 64) - 1
SEED_DERIVATION = "splitmix64(splitmix64(splitmix64(master) ^ bias) ^ index)"
CSV_COLUMNS = ["bias", "games", "wins", "win_rate", "ci_lo", "ci_hi", "mean_decision_round", "violations"]


def splitmix64(x):
    x = (x + 0x9E3779B97F4A7C15) & MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(master, bias, index):
    """64-bit game seed from (master seed, bias, game index)."""
    return splitmix64(splitmix64(splitmix64(master & MASK64) ^ (bias & MASK64)) ^ (index & MASK64))


def parse_biases(text):
    """``"250"``, ``"1,5,9"`` or an inclusive range ``"a:b:step"``."""
    text = str(text).strip()
    try:
        if ":" in text:
            parts = [int(p) for p in text.split(":")]
            if len(parts) == 2:
                parts.append(1)
            lo, hi, step = parts
            if step < 1:
                raise InvalidConfig("bias step must be >= 1")
            return list(range(lo, hi + 1, step))
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise InvalidConfig(f"bad bias specification {text!r}") from exc


@dataclass
class ExperimentSpec:
    n: int
    biases: list
    maker: str = "random"
    breaker: str = "random"
    target: str = "none"
    games: int = 100
    seed: int = 0
    monitors: list = field(default_factory=list)
    early_stop: bool = True
    threads: Optional[int] = 1

    def __post_init__(self):
        if self.games < 1:
            raise InvalidConfig(f"games must be >= 1, got {self.games}")
        if any(b < 1 for b in self.biases):
            raise InvalidConfig("bias values must be >= 1")
        self.biases = [int(b) for b in self.biases]
        self.monitors = list(self.monitors)
        # resolve everything once so that bad names fail before any game runs
        make_strategy(self.maker, "maker")
        make_strategy(self.breaker, "breaker")
        parse_monitors(",".join(self.monitors))
        GameConfig(self.n, max(self.biases, default=1), self.early_stop, self.target)

    def echo(self):
        d = asdict(self)
        d.pop("threads")
        return d


@dataclass
class GameSummary:
    index: int
    seed: int
    winner: str
    decision_round: Optional[int]
    rounds: int
    violations: int
    monitor_violations: dict


def run_game(spec, bias, index):
    """Play game ``index`` of the point ``bias``; the seed depends only on those and the master seed."""
    seed = derive_seed(spec.seed, bias, index)
    config = GameConfig(spec.n, bias, spec.early_stop, spec.target)
    monitors = parse_monitors(",".join(spec.monitors))
    tr = play_game(
        config,
        make_strategy(spec.maker, "maker"),
        make_strategy(spec.breaker, "breaker"),
        monitors,
        seed=seed,
        record=False,
    )
    per = {name: rep["violations"] for name, rep in tr.monitor_reports.items()}
    return GameSummary(index, seed, tr.winner, tr.decision_round, tr.rounds_played, sum(per.values()), per)


def _run_game_task(args):
    return run_game(*args)


def wilson_interval(wins, games, level=0.95):
    if games == 0:
        return 0.0, 1.0
    ci = binomtest(wins, games).proportion_ci(confidence_level=level, method="wilson")
    return float(ci.low), float(ci.high)


@dataclass
class PointResult:
    bias: int
    games: int
    wins: int
    losses: int
    win_rate: float
    ci_lo: float
    ci_hi: float
    mean_decision_round: Optional[float]
    violations: int
    monitor_violations: dict
    wall_time: float = 0.0

    @classmethod
    def aggregate(cls, bias, summaries, wall_time=0.0):
        summaries = sorted(summaries, key=lambda s: s.index)
        games = len(summaries)
        wins = sum(1 for s in summaries if s.winner == "maker")
        rounds = [s.decision_round for s in summaries if s.winner == "maker" and s.decision_round is not None]
        per = {}
        for s in summaries:
            for name, v in s.monitor_violations.items():
                per[name] = per.get(name, 0) + v
        lo, hi = wilson_interval(wins, games)
        return cls(
            bias=bias,
            games=games,
            wins=wins,
            losses=games - wins,
            win_rate=wins / games if games else 0.0,
            ci_lo=lo,
            ci_hi=hi,
            mean_decision_round=sum(rounds) / len(rounds) if rounds else None,
            violations=sum(s.violations for s in summaries),
            monitor_violations=per,
            wall_time=wall_time,
        )


@dataclass
class ExperimentResult:
    spec: dict
    points: list
    metadata: dict
    diagnostics: list = field(default_factory=list)

    def to_dict(self):
        return {
            "spec": self.spec,
            "points": [asdict(p) for p in self.points],
            "metadata": self.metadata,
            "diagnostics": self.diagnostics,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            spec=d["spec"],
            points=[PointResult(**p) for p in d["points"]],
            metadata=d["metadata"],
            diagnostics=d.get("diagnostics", []),
        )


def metadata():
    return {"rng": RNG_ALGORITHM, "seed_derivation": SEED_DERIVATION, "version": __version__}


def _workers(threads):
    if threads is None or threads == 0:
        return os.cpu_count() or 1
    return max(1, int(threads))


def run_point(spec, bias, executor=None):
    """Play ``spec.games`` games at ``bias`` and aggregate them in game-index order."""
    start = time.perf_counter()
    tasks = [(spec, bias, i) for i in range(spec.games)]
    if executor is not None:
        summaries = list(executor.map(_run_game_task, tasks, chunksize=max(1, len(tasks) // 64)))
    elif _workers(spec.threads) > 1:
        with ProcessPoolExecutor(max_workers=_workers(spec.threads)) as pool:
            summaries = list(pool.map(_run_game_task, tasks, chunksize=max(1, len(tasks) // 64)))
    else:
        summaries = [run_game(*t) for t in tasks]
    return PointResult.aggregate(bias, summaries, time.perf_counter() - start)


def monotonicity_flags(points):
    """Adjacent bias pairs where the win rate rises beyond the earlier point's interval."""
    flags = []
    ordered = sorted(points, key=lambda p: p.bias)
    for a, b in zip(ordered, ordered[1:]):
        if b.win_rate > a.ci_hi:
            flags.append(f"win rate rises from {a.win_rate:.3f} at b={a.bias} to {b.win_rate:.3f} at b={b.bias}")
    return flags


def bias_sweep(spec):
    workers = _workers(spec.threads)
    if workers > 1 and spec.biases:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            points = [run_point(spec, b, pool) for b in spec.biases]
    else:
        points = [run_point(spec, b) for b in spec.biases]
    return ExperimentResult(spec.echo(), points, metadata(), monotonicity_flags(points))


@dataclass
class ThresholdEstimate:
    estimate: float
    lo: int
    hi: int
    rate_lo: float
    rate_hi: float
    target_rate: float
    evaluations: list

    @property
    def width(self):
        return self.hi - self.lo


def threshold_estimate(spec, lo, hi, target_rate=0.5, resolution=1):
    """Bisect on the bias for the point where the win rate crosses ``target_rate``.

    Requires rate(lo) >= target_rate >= rate(hi), otherwise raises
    MonotoneAssumptionFailed carrying the measurements.
    """
    if lo > hi:
        raise InvalidConfig(f"lo={lo} exceeds hi={hi}")
    if resolution < 1:
        raise InvalidConfig("resolution must be >= 1")
    evaluations = []

    def rate(b):
        p = run_point(spec, b)
        evaluations.append(p)
        return p.win_rate

    r_lo = rate(lo)
    if lo == hi:
        return ThresholdEstimate(float(lo), lo, hi, r_lo, r_lo, target_rate, evaluations)
    r_hi = rate(hi)
    if not r_lo >= target_rate >= r_hi:
        raise MonotoneAssumptionFailed(
            f"need rate(lo) >= {target_rate} >= rate(hi), measured {r_lo} at {lo} and {r_hi} at {hi}",
            {lo: r_lo, hi: r_hi},
        )
    while hi - lo > resolution:
        mid = (lo + hi) // 2
        r = rate(mid)
        if r >= target_rate:
            lo, r_lo = mid, r
        else:
            hi, r_hi = mid, r
    return ThresholdEstimate((lo + hi) / 2, lo, hi, r_lo, r_hi, target_rate, evaluations)


# -- output ----------------------------------------------------------------------------------


def _fmt(x):
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    return f"{x:.6f}"


def csv_text(result):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for p in result.points:
        w.writerow(
            [p.bias, p.games, p.wins, _fmt(p.win_rate), _fmt(p.ci_lo), _fmt(p.ci_hi), _fmt(p.mean_decision_round), p.violations]
        )
    return buf.getvalue()


def json_text(result):
    return json.dumps(result.to_dict(), indent=2, sort_keys=True) + "\n"


def emit(result, fmt, path):
    """Write ``result`` as ``csv`` or ``json`` to ``path`` (``-`` for stdout text return)."""
    if fmt == "csv":
        text = csv_text(result)
    elif fmt == "json":
        text = json_text(result)
    else:
        raise InvalidConfig(f"unknown output format {fmt!r}")
    if path in (None, "-"):
        return text
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write results to {path}: {exc}") from exc
    return text


def load_json(path):
    with open(path, encoding="utf-8") as fh:
        return ExperimentResult.from_dict(json.load(fh))
