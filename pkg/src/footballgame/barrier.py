"""Closed-form barrier function of the two-pursuer football game and state classification.

Sign convention: B < 0 means the pursuers win (capture before the goal line),
B > 0 means the evader reaches the goal line first, and |B| <= tol is reported
as lying on the barrier.

Segment labels are positional along the goal line: S1 is the left corner
(0, 0), the last label (S3 equal speeds, S5 fast pursuers) is the right corner
(x_bar, 0), the middle label is simultaneous capture at the split point, and
S2/S4 are the tangency segments of the left/right pursuer cells.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Optional

from . import dominance
from .dominance import CandidateKind
from .errors import AlreadyTerminal, DegenerateInput, InvalidRatio, VerticalBisector
from .game import GameConfig, GameState, Regime
from .geometry import CrossingKind, Point, apollonius_circle, axis_crossings


class Segment(enum.Enum):
    S1 = 1
    S2 = 2
    S3 = 3
    S4 = 4
    S5 = 5


class Active(enum.Enum):
    P1_ONLY = "P1only"
    BOTH = "Both"
    P2_ONLY = "P2only"


class CaptureMode(enum.Enum):
    SINGLE_PURSUER = "SinglePursuer"
    SIMULTANEOUS = "Simultaneous"


class Outcome(enum.Enum):
    PURSUER_WIN = "PursuerWin"
    EVADER_WIN = "EvaderWin"
    ON_BARRIER = "OnBarrier"


@dataclass(frozen=True)
class BarrierEvaluation:
    value: float
    segment: Segment
    active: Active
    capture_mode: CaptureMode
    outcome: Outcome
    degraded: Optional[str] = None

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "segment": self.segment.name,
            "active": self.active.value,
            "capture_mode": self.capture_mode.value,
            "outcome": self.outcome.value,
            "degraded": self.degraded,
        }


@dataclass(frozen=True)
class CanonicalState:
    """State relabelled (and possibly mirrored) into the layout the closed forms assume.

    ``config`` carries the speeds matching the relabelled pursuers.
    """

    state: GameState
    swapped: bool
    config: GameConfig
    reflected: bool = False
    degraded: Optional[str] = None


def outcome_of(value: float, tol: float) -> Outcome:
    if value < -tol:
        return Outcome.PURSUER_WIN
    if value > tol:
        return Outcome.EVADER_WIN
    return Outcome.ON_BARRIER


def canonicalize(state: GameState, config: GameConfig) -> CanonicalState:
    """Relabel so P1 is left of P2 (equal speeds) or slower than P2 (fast pursuers).

    In the fast regime with the slower pursuer on the right, the whole field is
    mirrored about ``x_bar / 2`` so the slower pursuer sits on the left.
    """
    swapped = reflected = False
    cfg = config
    if config.regime is Regime.SAME_SPEED or config.equal_pursuers:
        if state.p1.x > state.p2.x:
            state, swapped = state.swapped(), True
            cfg = cfg.swapped()
    else:
        if config.v1 > config.v2:
            state, swapped = state.swapped(), True
            cfg = cfg.swapped()
        if state.p1.x > state.p2.x:
            state, reflected = state.reflected(config.x_bar), True
    note = None
    if state.p1 == state.p2:
        note = "coincident pursuers: single-pursuer barrier"
    return CanonicalState(state, swapped, cfg, reflected, note)


def split_point_same(p1: Point, p2: Point) -> float:
    """Goal-line abscissa equidistant from two equal-speed pursuers (``x1 < x2``)."""
    if p1.x == p2.x:
        raise VerticalBisector(f"pursuers share abscissa {p1.x}")
    return 0.5 * (p2.x**2 + p2.y**2 - p1.x**2 - p1.y**2) / (p2.x - p1.x)


def split_point_fast(p1: Point, p2: Point, gamma: float, x_bar: float | None = None) -> Optional[float]:
    """Larger goal-line root of the slower pursuer's Apollonius circle against the faster.

    ``gamma`` is P1 speed over P2 speed. Returns None when the circle misses
    the goal line (the slower pursuer owns no goal point). ``x_bar`` is
    accepted for interface symmetry and does not clamp the result.
    """
    if not 0.0 < gamma < 1.0:
        raise InvalidRatio(f"pursuer speed ratio {gamma} not in (0, 1); use split_point_same")
    if p1 == p2:
        raise DegenerateInput("coincident pursuers")
    g2 = gamma * gamma
    disc = g2 * (p1.x - p2.x) ** 2 - (1.0 - g2) * (p1.y**2 - g2 * p2.y**2)
    if disc < 0.0:
        return None
    return (p1.x - g2 * p2.x + math.sqrt(disc)) / (1.0 - g2)


def _lower_split_fast(p1: Point, p2: Point, gamma: float) -> Optional[float]:
    crossing = axis_crossings(apollonius_circle(p1, p2, gamma))
    if crossing.kind is CrossingKind.NONE:
        return None
    return crossing.xs[0]


def _evaluation(value, segment, active, tol, degraded=None) -> BarrierEvaluation:
    mode = CaptureMode.SIMULTANEOUS if active is Active.BOTH else CaptureMode.SINGLE_PURSUER
    return BarrierEvaluation(value, segment, active, mode, outcome_of(value, tol), degraded)


def envelope_barrier(cs: CanonicalState, note: str) -> BarrierEvaluation:
    """Barrier from the dominance-cell envelope; valid for every pursuer layout."""
    cfg = cs.config
    s = cs.state
    cands = dominance.candidates(s.p1, s.p2, cfg.vE, cfg.v1, cfg.v2, cfg.x_bar)
    best = dominance.envelope_winner(cands, s.evader.x, cfg.x_bar)
    last = Segment.S3 if cfg.regime is Regime.SAME_SPEED else Segment.S5
    middle = Segment.S2 if cfg.regime is Regime.SAME_SPEED else Segment.S3
    if best.kind is CandidateKind.LEFT_CORNER:
        segment = Segment.S1
    elif best.kind is CandidateKind.RIGHT_CORNER:
        segment = last
    elif best.kind is CandidateKind.JUNCTION:
        segment = middle
    else:
        segment = Segment.S2 if best.owner == 1 else Segment.S4
    active = {0: Active.BOTH, 1: Active.P1_ONLY, 2: Active.P2_ONLY}[best.owner]
    return _evaluation(best.barrier_value(s.evader), segment, active, cfg.tol, note)


def barrier_same(cs: CanonicalState, config: GameConfig | None = None) -> BarrierEvaluation:
    """Three-segment barrier for equal-speed players."""
    cfg = cs.config
    if cfg.regime is not Regime.SAME_SPEED:
        raise ValueError("barrier_same needs the equal-speed regime")
    s = cs.state
    xE, yE = s.evader.x, s.evader.y
    x1, y1 = s.p1.x, s.p1.y
    x2, y2 = s.p2.x, s.p2.y
    if cs.degraded:
        return envelope_barrier(cs, cs.degraded)
    if x1 > x2:
        raise ValueError("state is not canonical: x1 > x2")
    try:
        xI = split_point_same(s.p1, s.p2)
    except VerticalBisector:
        return envelope_barrier(cs, "pursuers share an abscissa: dominance envelope")
    if not 0.0 <= xI <= cfg.x_bar:
        return envelope_barrier(cs, f"split point {xI:.6g} outside [0, {cfg.x_bar:g}]: dominance envelope")

    if xE <= x1:
        value = x1**2 + y1**2 - xE**2 - yE**2
        return _evaluation(value, Segment.S1, Active.P1_ONLY, cfg.tol)
    if xE < x2:
        value = (x1 - xI) ** 2 + y1**2 - (xE - xI) ** 2 - yE**2
        return _evaluation(value, Segment.S2, Active.BOTH, cfg.tol)
    xb = cfg.x_bar
    value = (x2 - xb) ** 2 + y2**2 - (xE - xb) ** 2 - yE**2
    return _evaluation(value, Segment.S3, Active.P2_ONLY, cfg.tol)


def regular_split_fast(cs: CanonicalState) -> tuple[Optional[float], Optional[str]]:
    """Split point for the five-segment layout, or a note explaining why the layout is irregular."""
    cfg = cs.config
    s = cs.state
    if cs.degraded:
        return None, cs.degraded
    if cfg.equal_pursuers:
        if s.p1.x == s.p2.x:
            return None, "pursuers share an abscissa: dominance envelope"
        xI = split_point_same(s.p1, s.p2)
    else:
        xI = split_point_fast(s.p1, s.p2, cfg.gamma, cfg.x_bar)
        if xI is None:
            return None, "slower pursuer's dominance never reaches the goal line: single-pursuer barrier"
        lower = _lower_split_fast(s.p1, s.p2, cfg.gamma)
        if lower is not None and lower > 0.0:
            return None, f"faster pursuer owns both ends of the goal line (split {lower:.6g}, {xI:.6g}): dominance envelope"
    if not 0.0 <= xI <= cfg.x_bar:
        return None, f"split point {xI:.6g} outside [0, {cfg.x_bar:g}]: dominance envelope"
    return xI, None


def fast_thresholds(xI: float, x1: float, x2: float, g1: float, g2: float, x_bar: float) -> tuple:
    k1, k2 = g1 * g1, g2 * g2
    return (
        k1 * x1,
        (1.0 - k1) * xI + k1 * x1,
        (1.0 - k2) * xI + k2 * x2,
        (1.0 - k2) * x_bar + k2 * x2,
    )


def barrier_fast(cs: CanonicalState, config: GameConfig | None = None) -> BarrierEvaluation:
    """Five-segment barrier for two pursuers faster than the evader."""
    cfg = cs.config
    if cfg.regime is not Regime.FAST_PURSUERS:
        raise ValueError("barrier_fast needs the fast-pursuer regime")
    xI, note = regular_split_fast(cs)
    if note is not None:
        return envelope_barrier(cs, note)
    s = cs.state
    xE, yE = s.evader.x, s.evader.y
    x1, y1 = s.p1.x, s.p1.y
    x2, y2 = s.p2.x, s.p2.y
    xb = cfg.x_bar
    g1, g2 = cfg.gamma1, cfg.gamma2
    k1, k2 = g1 * g1, g2 * g2
    t1, t2, t3, t4 = fast_thresholds(xI, x1, x2, g1, g2, xb)

    if xE <= t1:
        value = k1 * (x1**2 + y1**2) - xE**2 - yE**2
        return _evaluation(value, Segment.S1, Active.P1_ONLY, cfg.tol)
    if xE <= t2:
        value = k1 * (x1**2 + (1 - k1) * y1**2) + k1 * xE**2 - (1 - k1) * yE**2 - 2 * k1 * x1 * xE
        return _evaluation(value, Segment.S2, Active.P1_ONLY, cfg.tol)
    if xE <= t3:
        value = k1 * ((x1 - xI) ** 2 + y1**2) - (xE - xI) ** 2 - yE**2
        return _evaluation(value, Segment.S3, Active.BOTH, cfg.tol)
    if xE <= t4:
        value = k2 * (x2**2 + (1 - k2) * y2**2) + k2 * xE**2 - (1 - k2) * yE**2 - 2 * k2 * x2 * xE
        return _evaluation(value, Segment.S4, Active.P2_ONLY, cfg.tol)
    value = k2 * ((x2 - xb) ** 2 + y2**2) - (xE - xb) ** 2 - yE**2
    return _evaluation(value, Segment.S5, Active.P2_ONLY, cfg.tol)


_MIRROR = {
    Regime.SAME_SPEED: {Segment.S1: Segment.S3, Segment.S2: Segment.S2, Segment.S3: Segment.S1},
    Regime.FAST_PURSUERS: {s: Segment(6 - s.value) for s in Segment},
}
_RELABEL = {Active.P1_ONLY: Active.P2_ONLY, Active.P2_ONLY: Active.P1_ONLY, Active.BOTH: Active.BOTH}


def classify(state: GameState, config: GameConfig) -> BarrierEvaluation:
    """Evaluate the barrier for ``state`` and report it in the caller's labels and frame."""
    state.validate(config)
    cause = state.terminal_cause()
    if cause is not None:
        raise AlreadyTerminal(cause.value)
    cs = canonicalize(state, config)
    if config.regime is Regime.SAME_SPEED:
        ev = barrier_same(cs)
    else:
        ev = barrier_fast(cs)
    if cs.reflected:
        ev = replace(ev, segment=_MIRROR[config.regime][ev.segment])
    if cs.swapped:
        ev = replace(ev, active=_RELABEL[ev.active])
    return ev
