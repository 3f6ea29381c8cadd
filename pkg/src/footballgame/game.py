"""Game data: player positions, speeds, field, regime and terminal conditions."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

from .errors import OutOfDomain, UnsupportedRegime
from .geometry import Point


class Regime(enum.Enum):
    SAME_SPEED = "SameSpeed"
    FAST_PURSUERS = "FastPursuers"


class TerminalCause(enum.Enum):
    GOAL_REACHED = "GoalReached"
    CAPTURED_BY_P1 = "CapturedByP1"
    CAPTURED_BY_P2 = "CapturedByP2"
    SIMULTANEOUS_CAPTURE = "SimultaneousCapture"
    TIMEOUT = "Timeout"


def _same(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=1e-12, abs_tol=0.0)


@dataclass(frozen=True)
class GameConfig:
    """Speeds, field width and numerical knobs.

    ``tol`` defaults to ``1e-9 * (1 + x_bar**2)``: B has units of length
    squared, so the band scales with the field.
    """

    vE: float
    v1: float
    v2: float
    x_bar: float
    tol: Optional[float] = None
    oracle_resolution: int = 2048
    regime: Regime = field(init=False)

    def __post_init__(self) -> None:
        for name in ("vE", "v1", "v2", "x_bar"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be a positive finite number, got {value}")
        if self.tol is None:
            object.__setattr__(self, "tol", 1e-9 * (1.0 + self.x_bar**2))
        elif not self.tol >= 0.0:
            raise ValueError(f"tol must be non-negative, got {self.tol}")
        if self.oracle_resolution < 1000:
            raise ValueError("oracle_resolution must be at least 1000")
        if _same(self.vE, self.v1) and _same(self.vE, self.v2):
            regime = Regime.SAME_SPEED
        elif self.vE < self.v1 and self.vE < self.v2:
            regime = Regime.FAST_PURSUERS
        else:
            raise UnsupportedRegime(
                f"speeds vE={self.vE}, v1={self.v1}, v2={self.v2}: need all equal or both pursuers faster"
            )
        object.__setattr__(self, "regime", regime)

    @property
    def gamma1(self) -> float:
        return self.vE / self.v1

    @property
    def gamma2(self) -> float:
        return self.vE / self.v2

    @property
    def gamma(self) -> float:
        """Pursuer-1 speed over pursuer-2 speed."""
        return self.v1 / self.v2

    @property
    def equal_pursuers(self) -> bool:
        return _same(self.v1, self.v2)

    def swapped(self) -> "GameConfig":
        return replace(self, v1=self.v2, v2=self.v1)

    def scaled(self, lam: float) -> "GameConfig":
        return replace(self, x_bar=self.x_bar * lam, tol=None)

    def echo(self) -> dict:
        return {
            "vE": self.vE,
            "v1": self.v1,
            "v2": self.v2,
            "x_bar": self.x_bar,
            "tol": self.tol,
            "oracle_resolution": self.oracle_resolution,
            "regime": self.regime.value,
        }


@dataclass(frozen=True)
class GameState:
    evader: Point
    p1: Point
    p2: Point

    @classmethod
    def from_coords(cls, xE, yE, x1, y1, x2, y2) -> "GameState":
        return cls(Point(xE, yE), Point(x1, y1), Point(x2, y2))

    def as_tuple(self) -> Tuple[float, float, float, float, float, float]:
        return (self.evader.x, self.evader.y, self.p1.x, self.p1.y, self.p2.x, self.p2.y)

    def swapped(self) -> "GameState":
        return GameState(self.evader, self.p2, self.p1)

    def reflected(self, x_bar: float) -> "GameState":
        """Mirror every player about the line ``x = x_bar / 2``."""
        return GameState(*(Point(x_bar - p.x, p.y) for p in (self.evader, self.p1, self.p2)))

    def scaled(self, lam: float) -> "GameState":
        return GameState(*(Point(lam * p.x, lam * p.y) for p in (self.evader, self.p1, self.p2)))

    def validate(self, config: GameConfig) -> None:
        for name, p in (("evader", self.evader), ("p1", self.p1), ("p2", self.p2)):
            if p.y < 0.0 or not 0.0 <= p.x <= config.x_bar:
                raise OutOfDomain(f"{name} at ({p.x}, {p.y}) outside [0, {config.x_bar}] x [0, inf)")

    def terminal_cause(self) -> Optional[TerminalCause]:
        """Which clause of the terminal set holds, if any (point capture)."""
        c1 = self.evader == self.p1
        c2 = self.evader == self.p2
        if c1 and c2:
            return TerminalCause.SIMULTANEOUS_CAPTURE
        if c1:
            return TerminalCause.CAPTURED_BY_P1
        if c2:
            return TerminalCause.CAPTURED_BY_P2
        if self.evader.y <= 0.0:
            return TerminalCause.GOAL_REACHED
        return None
