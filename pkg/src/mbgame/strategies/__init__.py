"""Players for both roles behind one interface, plus invariant monitors."""

from .base import RandomBreaker, RandomMaker, Strategy, random_breaker, random_maker
from .box_minor import BoxMinorMaker, BranchSetPlan, box_minor_maker, opening_condition, potential_holds
from .degree_cap import DegreeCapBreaker, degree_cap_breaker
from .monitors import (
    DegreePotentialMonitor,
    GBoxInvariantMonitor,
    Invariant1Monitor,
    Invariant2Monitor,
    Monitor,
    PairProcessMonitor,
    make_monitor,
    parse_monitors,
)
from .registry import make_strategy, strategy_factory
from .star_forcing import StarForcingBreaker, star_forcing_breaker
from .two_phase import TwoPhaseP11Breaker, TwoPhaseState, two_phase_p11_breaker

__all__ = [
    "BoxMinorMaker",
    "BranchSetPlan",
    "DegreeCapBreaker",
    "DegreePotentialMonitor",
    "GBoxInvariantMonitor",
    "Invariant1Monitor",
    "Invariant2Monitor",
    "Monitor",
    "PairProcessMonitor",
    "RandomBreaker",
    "RandomMaker",
    "StarForcingBreaker",
    "Strategy",
    "TwoPhaseP11Breaker",
    "TwoPhaseState",
    "box_minor_maker",
    "degree_cap_breaker",
    "make_monitor",
    "make_strategy",
    "opening_condition",
    "parse_monitors",
    "potential_holds",
    "random_breaker",
    "random_maker",
    "star_forcing_breaker",
    "strategy_factory",
    "two_phase_p11_breaker",
]
