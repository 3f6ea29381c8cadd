"""Fixed-step simulator of the football game under straight-line heuristic strategies.

The evader heads for the goal point with the best dominance margin
(recomputed every step). Each pursuer heads for the earliest point of the
evader's current straight path that it can reach no later than the evader,
or for the evader's goal point when no such point exists. These strategies
probe the barrier; they are not the optimal strategies of the game of degree.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .errors import AlreadyTerminal, UsageError
from .game import GameConfig, GameState, TerminalCause
from .geometry import Point
from .oracle import goal_margin


@dataclass
class Trajectory:
    times: List[float] = field(default_factory=list)
    states: List[GameState] = field(default_factory=list)
    headings: List[Tuple[float, float, float]] = field(default_factory=list)
    terminal: TerminalCause = TerminalCause.TIMEOUT
    capture_point: Optional[Point] = None

    @property
    def samples(self) -> List[Tuple[float, GameState]]:
        return list(zip(self.times, self.states))

    def to_csv(self) -> bytes:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "xE", "yE", "x1", "y1", "x2", "y2"])
        for t, s in zip(self.times, self.states):
            w.writerow([repr(t)] + [repr(v) for v in s.as_tuple()])
        return buf.getvalue().encode("utf-8")


def intercept_distance(evader: Point, heading: Tuple[float, float], pursuer: Point, k: float) -> Optional[float]:
    """Smallest ``s >= 0`` with ``|evader + s*heading - pursuer| <= k*s``.

    ``k`` is pursuer speed over evader speed (``k >= 1``); ``heading`` is a unit
    vector. None when the pursuer can never catch the straight-running evader.
    """
    wx, wy = evader.x - pursuer.x, evader.y - pursuer.y
    w2 = wx * wx + wy * wy
    if w2 == 0.0:
        return 0.0
    uw = heading[0] * wx + heading[1] * wy
    a = k * k - 1.0
    if a <= 1e-12:
        if uw >= 0.0:
            return None
        return -w2 / (2.0 * uw)
    return (uw + math.sqrt(uw * uw + a * w2)) / a


def _closest_approach(e0: Point, e1: Point, p0: Point, p1: Point) -> Tuple[float, float]:
    """(tau, distance) of the closest approach during a step, both players moving linearly."""
    rx, ry = p0.x - e0.x, p0.y - e0.y
    dx = (p1.x - p0.x) - (e1.x - e0.x)
    dy = (p1.y - p0.y) - (e1.y - e0.y)
    dd = dx * dx + dy * dy
    tau = 0.0 if dd == 0.0 else min(1.0, max(0.0, -(rx * dx + ry * dy) / dd))
    return tau, math.hypot(rx + tau * dx, ry + tau * dy)


def _lerp(a: Point, b: Point, t: float) -> Point:
    return Point(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))


def default_dt(config: GameConfig) -> float:
    return 1e-3 * config.x_bar / config.vE


def default_eps(config: GameConfig) -> float:
    return 1e-2 * config.x_bar


def default_t_max(state: GameState, config: GameConfig) -> float:
    return 4.0 * (config.x_bar + state.evader.y) / config.vE


def simulate(
    initial: GameState,
    config: GameConfig,
    dt: Optional[float] = None,
    eps: Optional[float] = None,
    t_max: Optional[float] = None,
) -> Trajectory:
    """Integrate the game until the goal line, a capture within ``eps``, or ``t_max``."""
    dt = default_dt(config) if dt is None else dt
    eps = default_eps(config) if eps is None else eps
    t_max = default_t_max(initial, config) if t_max is None else t_max
    if not (dt > 0.0 and eps > 0.0 and t_max > 0.0):
        raise UsageError(f"dt, eps and t_max must be positive (got {dt}, {eps}, {t_max})")
    if initial.evader.y <= 0.0:
        raise AlreadyTerminal(TerminalCause.GOAL_REACHED.value)

    traj = Trajectory(times=[0.0], states=[initial])
    close = [initial.evader.dist(p) <= eps for p in (initial.p1, initial.p2)]
    if any(close):
        traj.terminal = _capture_cause(*close)
        traj.capture_point = initial.evader
        return traj

    speeds = (config.v1, config.v2)
    state, t, steps = initial, 0.0, 0
    while t < t_max:
        e = state.evader
        goal = Point(goal_margin(state, config).argmax_x, 0.0)
        dist_goal = e.dist(goal)
        ux, uy = (goal.x - e.x) / dist_goal, (goal.y - e.y) / dist_goal
        phi = math.atan2(uy, ux)
        e_next = Point(e.x + config.vE * dt * ux, e.y + config.vE * dt * uy)

        new_pursuers = []
        psis = []
        for p, v in zip((state.p1, state.p2), speeds):
            s = intercept_distance(e, (ux, uy), p, v / config.vE)
            target = goal if s is None or s > dist_goal else Point(e.x + s * ux, e.y + s * uy)
            d = p.dist(target)
            if d == 0.0:
                target, d = e, p.dist(e)
            psi = math.atan2(target.y - p.y, target.x - p.x)
            psis.append(psi)
            new_pursuers.append(Point(p.x + v * dt * math.cos(psi), p.y + v * dt * math.sin(psi)))

        # fraction of the step at which the evader touches the goal line
        reached = e_next.y <= 0.0
        tau_goal = e.y / (e.y - e_next.y) if reached else 1.0
        approaches = [_closest_approach(e, e_next, p, q) for p, q in zip((state.p1, state.p2), new_pursuers)]
        hits = [d <= eps and tau <= tau_goal for tau, d in approaches]
        steps += 1
        t = steps * dt
        if any(hits):
            tau = min(a[0] for a, h in zip(approaches, hits) if h)
            state = GameState(
                _lerp(e, e_next, tau),
                _lerp(state.p1, new_pursuers[0], tau),
                _lerp(state.p2, new_pursuers[1], tau),
            )
            traj.times.append(t - (1.0 - tau) * dt)
            traj.states.append(state)
            traj.headings.append((phi, psis[0], psis[1]))
            traj.terminal = _capture_cause(*hits)
            traj.capture_point = state.evader
            return traj
        if reached:
            e_goal = _lerp(e, e_next, tau_goal)
            state = GameState(
                Point(e_goal.x, 0.0),
                _lerp(state.p1, new_pursuers[0], tau_goal),
                _lerp(state.p2, new_pursuers[1], tau_goal),
            )
            traj.times.append(t - (1.0 - tau_goal) * dt)
            traj.states.append(state)
            traj.headings.append((phi, psis[0], psis[1]))
            traj.terminal = TerminalCause.GOAL_REACHED
            return traj
        state = GameState(e_next, new_pursuers[0], new_pursuers[1])
        traj.times.append(t)
        traj.states.append(state)
        traj.headings.append((phi, psis[0], psis[1]))
    traj.terminal = TerminalCause.TIMEOUT
    return traj


def _capture_cause(by1: bool, by2: bool) -> TerminalCause:
    if by1 and by2:
        return TerminalCause.SIMULTANEOUS_CAPTURE
    return TerminalCause.CAPTURED_BY_P1 if by1 else TerminalCause.CAPTURED_BY_P2
