"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class GameError(Exception):
    """Base class for every error raised by this package."""


class DegenerateInput(GameError):
    """Two points that must be distinct coincide."""


class InvalidRatio(GameError):
    """A speed ratio lies outside the open interval (0, 1)."""


class VerticalBisector(GameError):
    """Pursuers share an abscissa, so their bisector never crosses the goal line at one point."""


class UnsupportedRegime(GameError):
    """Speed triple is neither all-equal nor both-pursuers-faster."""


class OutOfDomain(GameError):
    """A player lies outside the playing field."""


class AlreadyTerminal(GameError):
    """The state is already in the terminal set; ``cause`` names which clause."""

    def __init__(self, cause: str):
        super().__init__(f"AlreadyTerminal({cause})")
        self.cause = cause


class SectionInconsistency(GameError):
    """A cross-section segment has no real y >= 0 inside its declared interval."""


class UsageError(GameError):
    """Bad argument passed by a caller (format tag, sample count, step size...)."""
