"""Resolve strategy names such as ``degree-cap:k=3`` or ``box-minor:H=K1,3,eps=0.2``."""

from ..errors import InvalidConfig, UnknownStrategy
from ..graphs.patterns import parse_pattern
from .base import RandomBreaker, RandomMaker
from .box_minor import BoxMinorMaker
from .degree_cap import DegreeCapBreaker
from .star_forcing import StarForcingBreaker
from .two_phase import TwoPhaseP11Breaker

MAKER_NAMES = ("random", "box-minor")
BREAKER_NAMES = ("random", "degree-cap", "star-forcing", "two-phase-p11")


def parse_params(text):
    """``a=1,b=x,y`` -> ``{"a": "1", "b": "x,y"}``; bare tokens continue the previous value."""
    params = {}
    last = None
    for tok in text.split(",") if text else []:
        key, sep, val = tok.partition("=")
        if sep:
            last = key.strip()
            params[last] = val.strip()
        elif last is None:
            raise InvalidConfig(f"parameter {tok!r} has no name")
        else:
            params[last] += "," + tok.strip()
    return params


def _number(params, key, cast, default=None):
    if key not in params:
        if default is None:
            raise InvalidConfig(f"missing parameter {key!r}")
        return default
    try:
        return cast(params[key])
    except ValueError as exc:
        raise InvalidConfig(f"bad value for {key!r}: {params[key]!r}") from exc


def _check_keys(name, params, allowed):
    extra = set(params) - set(allowed)
    if extra:
        raise InvalidConfig(f"{name} does not take {', '.join(sorted(extra))}")


def make_strategy(spec, role):
    """Fresh strategy instance for ``role`` in {"maker", "breaker"}."""
    if role not in ("maker", "breaker"):
        raise InvalidConfig(f"role must be maker or breaker, got {role!r}")
    spec = spec.strip()
    name, _, rest = spec.partition(":")
    params = parse_params(rest)
    known = MAKER_NAMES if role == "maker" else BREAKER_NAMES
    if name not in known:
        raise UnknownStrategy(f"unknown {role} strategy {spec!r}; known: {', '.join(known)}")
    if name == "random":
        _check_keys(name, params, ())
        return RandomMaker() if role == "maker" else RandomBreaker()
    if name == "box-minor":
        _check_keys(name, params, ("H", "eps"))
        if "H" not in params:
            raise InvalidConfig("box-minor needs H=<pattern>")
        return BoxMinorMaker(parse_pattern(params["H"]), params.get("eps", "0.2"))
    if name == "degree-cap":
        _check_keys(name, params, ("k",))
        return DegreeCapBreaker(_number(params, "k", int))
    if name == "star-forcing":
        _check_keys(name, params, ())
        return StarForcingBreaker()
    _check_keys(name, params, ("phase1",))
    return TwoPhaseP11Breaker(_number(params, "phase1", float, 0.03))


def strategy_factory(spec, role):
    """Validate ``spec`` now and return a zero-argument factory (picklable)."""
    make_strategy(spec, role)
    return _Factory(spec, role)


class _Factory:
    def __init__(self, spec, role):
        self.spec = spec
        self.role = role

    def __call__(self):
        return make_strategy(self.spec, self.role)
