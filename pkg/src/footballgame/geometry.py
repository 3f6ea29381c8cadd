"""Dominance-boundary primitives: bisectors, Apollonius circles, goal-axis crossings.

Equal-speed players split the plane along the perpendicular bisector of the
segment joining them; a slower player facing a faster one owns the disc
bounded by their Apollonius circle. Everything here is a pure function of
immutable values.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Tuple

from .errors import DegenerateInput, InvalidRatio


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite point ({self.x}, {self.y})")

    def dist(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def dist2(self, other: "Point") -> float:
        dx = self.x - other.x
        dy = self.y - other.y
        return dx * dx + dy * dy

    def as_tuple(self) -> Tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class ImplicitLine:
    """The line ``a*x + b*y = c`` with ``a**2 + b**2 == 1``."""

    a: float
    b: float
    c: float

    def signed_distance(self, z: Point) -> float:
        return self.a * z.x + self.b * z.y - self.c

    def axis_crossing(self) -> Optional[float]:
        """Abscissa where the line meets ``y = 0``; None when parallel to it."""
        if self.a == 0.0:
            return None
        return self.c / self.a

    def point_at(self, s: float) -> Point:
        """Point at arc-length ``s`` from the foot of the origin's perpendicular."""
        return Point(self.a * self.c - self.b * s, self.b * self.c + self.a * s)


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: float

    def __post_init__(self) -> None:
        if not self.radius >= 0.0:
            raise ValueError(f"negative radius {self.radius}")

    def signed_distance(self, z: Point) -> float:
        return self.center.dist(z) - self.radius

    def point_at(self, theta: float) -> Point:
        return Point(
            self.center.x + self.radius * math.cos(theta),
            self.center.y + self.radius * math.sin(theta),
        )


class CrossingKind(enum.Enum):
    NONE = "None"
    TANGENT = "Tangent"
    TWO_POINTS = "TwoPoints"


@dataclass(frozen=True)
class AxisCrossing:
    kind: CrossingKind
    xs: Tuple[float, ...] = ()


def orthogonal_bisector(p: Point, q: Point) -> ImplicitLine:
    """Perpendicular bisector of ``pq``, oriented so ``p`` has negative signed distance."""
    d = p.dist(q)
    if d == 0.0:
        raise DegenerateInput(f"bisector of coincident points {p.as_tuple()}")
    a = (q.x - p.x) / d
    b = (q.y - p.y) / d
    mx = 0.5 * (p.x + q.x)
    my = 0.5 * (p.y + q.y)
    return ImplicitLine(a, b, a * mx + b * my)


def apollonius_circle(evader: Point, pursuer: Point, ratio: float) -> Circle:
    """Locus of points ``z`` with ``|z - evader| == ratio * |z - pursuer|``.

    ``ratio`` is evader speed over pursuer speed; the disc it bounds is the set
    of points the evader reaches strictly first.
    """
    if not 0.0 < ratio < 1.0:
        raise InvalidRatio(f"ratio {ratio} not in (0, 1)")
    d = evader.dist(pursuer)
    if d == 0.0:
        raise DegenerateInput(f"evader and pursuer coincide at {evader.as_tuple()}")
    r2 = ratio * ratio
    k = 1.0 / (1.0 - r2)
    center = Point(k * (evader.x - r2 * pursuer.x), k * (evader.y - r2 * pursuer.y))
    return Circle(center, ratio * k * d)


def axis_crossings(c: Circle, tol: Optional[float] = None) -> AxisCrossing:
    """Real roots of ``(x - cx)**2 + cy**2 == r**2``, sorted ascending.

    The default tolerance is relative: ``1e-9 * (1 + radius)``.
    """
    if tol is None:
        tol = 1e-9 * (1.0 + c.radius)
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    gap = c.radius - abs(c.center.y)
    if abs(gap) <= tol:
        return AxisCrossing(CrossingKind.TANGENT, (c.center.x,))
    if gap < 0.0:
        return AxisCrossing(CrossingKind.NONE)
    half = math.sqrt(gap * (c.radius + abs(c.center.y)))
    return AxisCrossing(CrossingKind.TWO_POINTS, (c.center.x - half, c.center.x + half))
