"""Brute-force goal-line dominance scan used to check the closed-form barrier.

Nothing here touches the closed forms: the scan only measures, for each goal
point g, how much earlier (in evader distance units) the evader gets there
than the quickest pursuer, and keeps the best g.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
from scipy.optimize import minimize_scalar

from .barrier import classify
from .errors import AlreadyTerminal
from .game import GameConfig, GameState, Regime
from .geometry import Point

log = logging.getLogger(__name__)

_REFINE_XTOL = 1e-10
_REFINE_PEAKS = 3


@dataclass(frozen=True)
class GoalMargin:
    margin: float
    argmax_x: float


def _ratios(config: GameConfig) -> tuple[float, float]:
    if config.regime is Regime.SAME_SPEED:
        return 1.0, 1.0
    return config.gamma1, config.gamma2


def margin_at(state: GameState, config: GameConfig, g):
    """``min_i(gamma_i * |g - P_i|) - |g - E|`` at goal abscissa ``g`` (scalar or array)."""
    r1, r2 = _ratios(config)
    e, p1, p2 = state.evader, state.p1, state.p2
    d1 = np.hypot(g - p1.x, p1.y)
    d2 = np.hypot(g - p2.x, p2.y)
    de = np.hypot(g - e.x, e.y)
    return np.minimum(r1 * d1, r2 * d2) - de


def _scalar_loss(state: GameState, config: GameConfig):
    r1, r2 = _ratios(config)
    (xe, ye, x1, y1, x2, y2) = state.as_tuple()
    hypot = math.hypot

    def loss(g: float) -> float:
        return hypot(g - xe, ye) - min(r1 * hypot(g - x1, y1), r2 * hypot(g - x2, y2))

    return loss


def goal_margin(state: GameState, config: GameConfig, resolution: Optional[int] = None) -> GoalMargin:
    """Best evader lead over the goal line: dense grid, then bounded refinement of the top peaks."""
    n = resolution or config.oracle_resolution
    xb = config.x_bar
    grid = np.linspace(0.0, xb, n + 1)
    vals = margin_at(state, config, grid)

    # local maxima of the sampled curve, endpoints included
    left = np.concatenate(([-np.inf], vals[:-1]))
    right = np.concatenate((vals[1:], [-np.inf]))
    peaks = np.flatnonzero((vals >= left) & (vals >= right))
    peaks = peaks[np.argsort(vals[peaks])[::-1][:_REFINE_PEAKS]]

    best_g = float(grid[peaks[0]])
    best = float(vals[peaks[0]])
    for k in peaks:
        lo = grid[max(k - 1, 0)]
        hi = grid[min(k + 1, n)]
        res = minimize_scalar(
            _scalar_loss(state, config),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": _REFINE_XTOL},
        )
        if -res.fun > best:
            best, best_g = float(-res.fun), float(res.x)
    return GoalMargin(best, best_g)


def random_states(config: GameConfig, rng: np.random.Generator, n: int, y_max: Optional[float] = None) -> List[GameState]:
    """``n`` states uniform on ``[0, x_bar] x (0, y_max]`` for every player (``y_max`` defaults to ``x_bar``)."""
    xb = config.x_bar
    ym = xb if y_max is None else y_max
    xs = rng.uniform(0.0, xb, size=(n, 3))
    ys = ym - rng.uniform(0.0, ym, size=(n, 3))  # maps [0, ym) onto (0, ym]
    return [GameState.from_coords(x[0], y[0], x[1], y[1], x[2], y[2]) for x, y in zip(xs, ys)]


@dataclass
class AgreementReport:
    seed: int
    config: dict
    band: float
    n_requested: int
    n_checked: int = 0
    n_drawn: int = 0
    agreements: int = 0
    degraded: int = 0
    disagreements: List[dict] = field(default_factory=list)
    warning: Optional[str] = None

    @property
    def passed(self) -> bool:
        return not self.disagreements

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "config": self.config,
            "band": self.band,
            "n_requested": self.n_requested,
            "n_drawn": self.n_drawn,
            "n_checked": self.n_checked,
            "agreements": self.agreements,
            "disagreement_count": len(self.disagreements),
            "degraded_states": self.degraded,
            "disagreements": self.disagreements,
            "warning": self.warning,
            "passed": self.passed,
        }


def _margins(args) -> List[float]:
    states, config = args
    return [goal_margin(s, config).margin for s in states]


def sweep_agreement(
    config: GameConfig,
    n_states: int,
    seed: int,
    band: Optional[float] = None,
    workers: int = 1,
    max_draws: Optional[int] = None,
) -> AgreementReport:
    """Compare sign(B) with sign(goal margin) on seeded random states with ``|B| > band``.

    States are drawn until ``n_states`` clear the band or ``max_draws``
    (default ``10 * n_states``) is exhausted. The report is identical for any
    ``workers`` count.
    """
    if n_states < 1:
        raise ValueError("n_states must be >= 1")
    if band is None:
        band = 1e-3 * (1.0 + config.x_bar**2)
    max_draws = max_draws or 10 * n_states
    rng = np.random.default_rng(seed)
    report = AgreementReport(seed, config.echo(), band, n_states)

    kept: List[GameState] = []
    evals = []
    while len(kept) < n_states and report.n_drawn < max_draws:
        batch = random_states(config, rng, min(n_states - len(kept), max_draws - report.n_drawn))
        report.n_drawn += len(batch)
        for s in batch:
            try:
                ev = classify(s, config)
            except AlreadyTerminal:
                continue
            if abs(ev.value) > band:
                kept.append(s)
                evals.append(ev)

    if workers > 1 and kept:
        chunk = math.ceil(len(kept) / workers)
        jobs = [(kept[i : i + chunk], config) for i in range(0, len(kept), chunk)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            margins = [m for part in pool.map(_margins, jobs) for m in part]
    else:
        margins = _margins((kept, config))

    for i, (s, ev, m) in enumerate(zip(kept, evals, margins)):
        report.n_checked += 1
        report.degraded += ev.degraded is not None
        if (ev.value > 0) == (m > 0) and m != 0.0:
            report.agreements += 1
        else:
            report.disagreements.append(
                {"index": i, "state": list(s.as_tuple()), "B": ev.value, "segment": ev.segment.name, "margin": m}
            )
    if report.n_checked == 0:
        report.warning = "every drawn state fell inside the barrier band; agreement is vacuous"
        log.warning(report.warning)
    return report


def band_tolerance(config: GameConfig) -> float:
    return 1e-4 * config.x_bar


def barrier_states(
    config: GameConfig,
    per_segment: int,
    seed: int,
    max_placements: Optional[int] = None,
) -> Dict[str, List[GameState]]:
    """States with B = 0 on each closed-form segment, keyed by segment name.

    Pursuers are placed at random in regular layouts; the evader abscissa is
    drawn inside one of the section's segments and its height solved from that
    segment's equation.
    """
    from .section import cross_section

    rng = np.random.default_rng(seed)
    xb = config.x_bar
    labels = ["S1", "S2", "S3"] if config.regime is Regime.SAME_SPEED else ["S1", "S2", "S3", "S4", "S5"]
    out: Dict[str, List[GameState]] = {k: [] for k in labels}
    budget = max_placements or 200 * per_segment * len(labels)
    for _ in range(budget):
        if all(len(v) >= per_segment for v in out.values()):
            break
        p1 = Point(*rng.uniform(0.0, xb, 2))
        p2 = Point(*rng.uniform(0.0, xb, 2))
        sec = cross_section(p1, p2, config)
        if sec.degraded is not None:
            continue
        live = [s for s in sec.segments if not s.empty]
        seg = live[rng.integers(len(live))]
        x = seg.lo + (seg.hi - seg.lo) * rng.uniform(0.01, 0.99)
        y = seg.y_at(x)
        if y <= 1e-6 * xb:
            continue
        state = GameState(Point(x, y), p1, p2)
        if state.terminal_cause() is not None:
            continue
        label = classify(state, config).segment.name
        if len(out[label]) < per_segment:
            out[label].append(state)
    return out
