"""Goal-line dominance cells and the barrier envelope they induce.

For a goal point ``g`` on ``[0, x_bar]`` let

    h_i(g) = gamma_i**2 * |g - P_i|**2 - |g - E|**2

which is positive exactly when the evader reaches ``g`` before pursuer ``i``.
On each cell of the goal line only the pursuer that arrives there first
matters, and ``h_i`` is concave (fast pursuer) or linear (equal speed), so the
best goal point is a cell endpoint or the vertex of ``h_i``. Endpoint
candidates give circles centred on the goal line, vertex candidates give the
tangency hyperbolas; the closed-form barrier segments are exactly these
candidates arranged for the regular left/right layout. The envelope here
covers every layout, including the ones where one pursuer's cell is empty.

Since every ``h_i(g)`` carries the same ``-y_E**2`` term, which candidate wins
depends only on the evader abscissa.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .errors import DegenerateInput
from .geometry import CrossingKind, Point, apollonius_circle, axis_crossings, orthogonal_bisector

# Relative width below which two goal-line breakpoints are merged.
_MERGE = 1e-12


class CandidateKind(enum.Enum):
    LEFT_CORNER = "left_corner"
    JUNCTION = "junction"
    RIGHT_CORNER = "right_corner"
    TANGENCY = "tangency"


@dataclass(frozen=True)
class Cell:
    lo: float
    hi: float
    owner: int  # 1 or 2


@dataclass(frozen=True)
class Candidate:
    """One candidate best goal point, viewed as a function of the evader abscissa.

    ``g`` is fixed for corner/junction candidates; for a tangency candidate it
    moves with the evader and is only valid while it stays inside ``cell``.
    """

    kind: CandidateKind
    owner: int  # 0 for junctions (both pursuers tie there)
    pursuer: Point
    gamma: float
    g: Optional[float] = None
    cell: Optional[Cell] = None

    @property
    def weight(self) -> float:
        """``gamma**2 * |g - P|**2`` for fixed-g candidates (the circle's squared radius)."""
        return self.gamma**2 * ((self.g - self.pursuer.x) ** 2 + self.pursuer.y**2)

    def x_interval(self, x_bar: float) -> Tuple[float, float]:
        if self.kind is not CandidateKind.TANGENCY:
            return (0.0, x_bar)
        k = self.gamma**2
        lo = (1.0 - k) * self.cell.lo + k * self.pursuer.x
        hi = (1.0 - k) * self.cell.hi + k * self.pursuer.x
        return (max(lo, 0.0), min(hi, x_bar))

    def valid_at(self, x: float, x_bar: float) -> bool:
        lo, hi = self.x_interval(x_bar)
        return lo <= x <= hi

    def peak(self, x: float) -> float:
        """Max over this candidate's goal points of ``h + y_E**2`` for an evader at abscissa x."""
        if self.kind is CandidateKind.TANGENCY:
            k = self.gamma**2
            px, py = self.pursuer.x, self.pursuer.y
            return k * (px * px + (1.0 - k) * py * py + x * x - 2.0 * px * x) / (1.0 - k)
        return self.weight - (x - self.g) ** 2

    def barrier_value(self, evader: Point) -> float:
        """Closed-form barrier value this candidate assigns to ``evader``.

        Tangency candidates use the division-free form, which is the peak scaled
        by ``1 - gamma**2``.
        """
        xE, yE = evader.x, evader.y
        if self.kind is CandidateKind.TANGENCY:
            k = self.gamma**2
            px, py = self.pursuer.x, self.pursuer.y
            return k * (px * px + (1.0 - k) * py * py) + k * xE * xE - (1.0 - k) * yE * yE - 2.0 * k * px * xE
        return self.weight - (xE - self.g) ** 2 - yE * yE


def split_points(p1: Point, p2: Point, v1: float, v2: float) -> Optional[Tuple[float, ...]]:
    """Goal-line abscissae where both pursuers arrive together, sorted.

    Expects ``v1 <= v2``. Returns None when the pursuers coincide.
    """
    if p1 == p2:
        return None
    if math.isclose(v1, v2, rel_tol=1e-12):
        x = orthogonal_bisector(p1, p2).axis_crossing()
        return () if x is None else (x,)
    crossing = axis_crossings(apollonius_circle(p1, p2, v1 / v2))
    if crossing.kind is CrossingKind.NONE:
        return ()
    return crossing.xs


def goal_cells(p1: Point, p2: Point, v1: float, v2: float, x_bar: float) -> List[Cell]:
    """Partition ``[0, x_bar]`` by which pursuer reaches each goal point first.

    Expects ``v1 <= v2``. Ties (coincident equal-speed pursuers) go to P1.
    """
    if v1 > v2:
        raise ValueError("goal_cells expects v1 <= v2")
    roots = split_points(p1, p2, v1, v2)
    if roots is None:
        owner = 1 if math.isclose(v1, v2, rel_tol=1e-12) else 2
        return [Cell(0.0, x_bar, owner)]
    cuts = [0.0]
    for r in roots:
        if _MERGE * x_bar < r < x_bar * (1.0 - _MERGE) and r - cuts[-1] > _MERGE * x_bar:
            cuts.append(r)
    cuts.append(x_bar)
    cells: List[Cell] = []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        g = 0.5 * (lo + hi)
        lag = v2 * v2 * ((g - p1.x) ** 2 + p1.y**2) - v1 * v1 * ((g - p2.x) ** 2 + p2.y**2)
        owner = 1 if lag <= 0.0 else 2
        if cells and cells[-1].owner == owner:
            cells[-1] = Cell(cells[-1].lo, hi, owner)
        else:
            cells.append(Cell(lo, hi, owner))
    return cells


def candidates(p1: Point, p2: Point, vE: float, v1: float, v2: float, x_bar: float) -> List[Candidate]:
    cells = goal_cells(p1, p2, v1, v2, x_bar)
    pursuers = {1: (p1, vE / v1), 2: (p2, vE / v2)}
    out: List[Candidate] = []
    for i, cell in enumerate(cells):
        p, gam = pursuers[cell.owner]
        if i == 0:
            out.append(Candidate(CandidateKind.LEFT_CORNER, cell.owner, p, gam, g=0.0))
        else:
            out.append(Candidate(CandidateKind.JUNCTION, 0, p, gam, g=cell.lo))
        if gam < 1.0:
            out.append(Candidate(CandidateKind.TANGENCY, cell.owner, p, gam, cell=cell))
    last = cells[-1]
    p, gam = pursuers[last.owner]
    out.append(Candidate(CandidateKind.RIGHT_CORNER, last.owner, p, gam, g=x_bar))
    return out


def envelope_winner(cands: List[Candidate], x: float, x_bar: float) -> Candidate:
    """The candidate holding the best goal point for an evader at abscissa ``x``."""
    best = None
    best_peak = -math.inf
    for c in cands:
        if c.valid_at(x, x_bar):
            peak = c.peak(x)
            if peak > best_peak:
                best, best_peak = c, peak
    if best is None:
        raise DegenerateInput(f"no dominance candidate covers x={x}")
    return best
