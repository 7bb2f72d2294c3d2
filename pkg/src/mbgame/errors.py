"""Exception hierarchy shared by the board, detectors, strategies and harness."""


class MBGameError(Exception):
    """Base class for every error raised by this package."""


class InvalidConfig(MBGameError, ValueError):
    pass


class InvalidEdge(MBGameError, ValueError):
    pass


class AlreadyClaimed(MBGameError):
    pass


class BoardFull(MBGameError):
    pass


class StrategyFault(MBGameError):
    """A strategy returned an edge that is not free, a duplicate, or too many edges."""

    def __init__(self, player, round_no, message=""):
        self.player = player
        self.round = round_no
        super().__init__(f"{player} fault in round {round_no}: {message}")


class StrategyStuck(MBGameError):
    pass


class MonitorViolation(MBGameError):
    pass


class CorruptTranscript(MBGameError):
    pass


class CorruptState(MBGameError):
    pass


class PatternTooLarge(MBGameError, ValueError):
    pass


class InvalidPattern(MBGameError, ValueError):
    pass


class Undefined(MBGameError, ValueError):
    pass


class UnknownStrategy(MBGameError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown strategy"


class GameOver(MBGameError):
    pass


class PolicyFault(MBGameError):
    pass


class OracleTooLarge(MBGameError):
    pass


class MonotoneAssumptionFailed(MBGameError):
    def __init__(self, message, measurements=None):
        self.measurements = measurements or {}
        super().__init__(message)
