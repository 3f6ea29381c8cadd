"""Barrier cross-sections for fixed pursuer positions.

A cross-section is the curve of evader positions on the barrier. It is a
chain of circle arcs centred on the goal line and upper hyperbola branches,
each valid over an x-interval; the evader wins below the curve and loses
above it.
"""

from __future__ import annotations

import enum
import html
import io
import csv
import json
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from . import dominance
from .barrier import canonicalize, fast_thresholds, regular_split_fast, split_point_same
from .dominance import Candidate, CandidateKind
from .errors import SectionInconsistency, UsageError, VerticalBisector
from .game import GameConfig, GameState, Regime
from .geometry import Point

# Sampled y**2 may dip this far below zero (relative to the curve scale) before it is an error.
_NEG_SLACK = 1e-9


class CurveKind(enum.Enum):
    CIRCLE_ARC = "CircleArc"
    HYPERBOLA_ARC = "HyperbolaArc"


@dataclass(frozen=True)
class CurveSegment:
    """One arc of the cross-section.

    ``coefficients`` is ``(cx, cy, r)`` for a circle arc and ``(A, C, D, F)``
    for the hyperbola ``A*x**2 + C*y**2 + D*x + F = 0`` (A > 0, C < 0).
    """

    kind: CurveKind
    coefficients: Tuple[float, ...]
    lo: float
    hi: float

    @property
    def empty(self) -> bool:
        return not self.hi > self.lo

    def residual(self, x: float, y: float) -> float:
        if self.kind is CurveKind.CIRCLE_ARC:
            cx, cy, r = self.coefficients
            return (x - cx) ** 2 + (y - cy) ** 2 - r * r
        A, C, D, F = self.coefficients
        return A * x * x + C * y * y + D * x + F

    def y_squared(self, x: float) -> float:
        """Squared height above the centre line (y itself for the hyperbola)."""
        if self.kind is CurveKind.CIRCLE_ARC:
            cx, _, r = self.coefficients
            return r * r - (x - cx) ** 2
        A, C, D, F = self.coefficients
        return -(A * x * x + D * x + F) / C

    def scale(self) -> float:
        if self.kind is CurveKind.CIRCLE_ARC:
            return 1.0 + self.coefficients[2] ** 2
        return 1.0 + max(abs(c) for c in self.coefficients)

    def y_at(self, x: float) -> float:
        y2 = self.y_squared(x)
        if y2 < 0.0:
            if y2 < -_NEG_SLACK * self.scale():
                raise SectionInconsistency(f"{self.kind.value} has no real point at x={x} (y^2={y2})")
            y2 = 0.0
        base = self.coefficients[1] if self.kind is CurveKind.CIRCLE_ARC else 0.0
        return base + math.sqrt(y2)

    def reflected(self, x_bar: float) -> "CurveSegment":
        if self.kind is CurveKind.CIRCLE_ARC:
            cx, cy, r = self.coefficients
            coeffs = (x_bar - cx, cy, r)
        else:
            A, C, D, F = self.coefficients
            coeffs = (A, C, -(2.0 * A * x_bar + D), A * x_bar * x_bar + D * x_bar + F)
        return CurveSegment(self.kind, coeffs, x_bar - self.hi, x_bar - self.lo)

    def as_dict(self) -> dict:
        out = {"kind": self.kind.value, "x_interval": [self.lo, self.hi]}
        if self.kind is CurveKind.CIRCLE_ARC:
            cx, cy, r = self.coefficients
            out.update(center=[cx, cy], radius=r)
        else:
            A, C, D, F = self.coefficients
            out.update(coefficients={"A": A, "C": C, "D": D, "F": F})
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "CurveSegment":
        kind = CurveKind(d["kind"])
        lo, hi = d["x_interval"]
        if kind is CurveKind.CIRCLE_ARC:
            coeffs = (d["center"][0], d["center"][1], d["radius"])
        else:
            c = d["coefficients"]
            coeffs = (c["A"], c["C"], c["D"], c["F"])
        return cls(kind, tuple(coeffs), lo, hi)


@dataclass(frozen=True)
class CrossSection:
    segments: Tuple[CurveSegment, ...]
    regime: Regime
    x_bar: float
    p1: Point
    p2: Point
    degraded: Optional[str] = None

    def as_dict(self) -> dict:
        return {
            "regime": self.regime.value,
            "x_bar": self.x_bar,
            "pursuers": [[self.p1.x, self.p1.y], [self.p2.x, self.p2.y]],
            "degraded": self.degraded,
            "segments": [s.as_dict() for s in self.segments],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CrossSection":
        (x1, y1), (x2, y2) = d["pursuers"]
        return cls(
            tuple(CurveSegment.from_dict(s) for s in d["segments"]),
            Regime(d["regime"]),
            d["x_bar"],
            Point(x1, y1),
            Point(x2, y2),
            d.get("degraded"),
        )

    def y_at(self, x: float) -> float:
        for seg in self.segments:
            if seg.lo <= x <= seg.hi and not seg.empty:
                return seg.y_at(x)
        raise ValueError(f"x={x} outside the section")


def _circle(cx: float, r2: float, lo: float, hi: float) -> CurveSegment:
    return CurveSegment(CurveKind.CIRCLE_ARC, (cx, 0.0, math.sqrt(max(r2, 0.0))), lo, hi)


def _hyperbola(p: Point, gamma: float, lo: float, hi: float) -> CurveSegment:
    k = gamma * gamma
    coeffs = (k, -(1.0 - k), -2.0 * k * p.x + 0.0, k * (p.x**2 + (1.0 - k) * p.y**2))
    return CurveSegment(CurveKind.HYPERBOLA_ARC, coeffs, lo, hi)


def _curve_for(c: Candidate, lo: float, hi: float) -> CurveSegment:
    if c.kind is CandidateKind.TANGENCY:
        return _hyperbola(c.pursuer, c.gamma, lo, hi)
    return _circle(c.g, c.weight, lo, hi)


def _pair_crossings(a: Candidate, b: Candidate) -> List[float]:
    """Abscissae where two candidates' peak curves are equal (each peak is a quadratic in x)."""
    qa, qb = _quadratic(a), _quadratic(b)
    A, B, C = (qa[0] - qb[0], qa[1] - qb[1], qa[2] - qb[2])
    scale = max(abs(A), abs(B), abs(C), 1e-300)
    if abs(A) <= 1e-14 * scale:
        if abs(B) <= 1e-14 * scale:
            return []
        return [-C / B]
    disc = B * B - 4.0 * A * C
    if disc < 0.0:
        return []
    sq = math.sqrt(disc)
    q = -0.5 * (B + math.copysign(sq, B))
    roots = [q / A]
    if q != 0.0:
        roots.append(C / q)
    return roots


def _quadratic(c: Candidate) -> Tuple[float, float, float]:
    """Coefficients (a, b, c) of ``peak(x) = a*x**2 + b*x + c``."""
    if c.kind is CandidateKind.TANGENCY:
        k = c.gamma**2
        px, py = c.pursuer.x, c.pursuer.y
        s = k / (1.0 - k)
        return (s, -2.0 * s * px, s * (px * px + (1.0 - k) * py * py))
    return (-1.0, 2.0 * c.g, c.weight - c.g * c.g)


def envelope_section(p1: Point, p2: Point, config: GameConfig, note: str) -> CrossSection:
    """Cross-section of the dominance-cell envelope, valid for every pursuer layout.

    Expects canonical labels (``v1 <= v2``).
    """
    xb = config.x_bar
    cands = dominance.candidates(p1, p2, config.vE, config.v1, config.v2, xb)
    cuts = {0.0, xb}
    for c in cands:
        cuts.update(c.x_interval(xb))
    for i, a in enumerate(cands):
        for b in cands[i + 1 :]:
            cuts.update(_pair_crossings(a, b))
    xs = sorted(x for x in cuts if 0.0 <= x <= xb)

    pieces: List[Tuple[Candidate, float, float]] = []
    for lo, hi in zip(xs[:-1], xs[1:]):
        if hi - lo <= 1e-14 * xb:
            continue
        best = dominance.envelope_winner(cands, 0.5 * (lo + hi), xb)
        if pieces and pieces[-1][0] is best:
            pieces[-1] = (best, pieces[-1][1], hi)
        else:
            pieces.append((best, lo, hi))
    # glue over skipped slivers so intervals stay contiguous
    segs = []
    for i, (c, lo, hi) in enumerate(pieces):
        lo = 0.0 if i == 0 else segs[-1].hi
        hi = xb if i == len(pieces) - 1 else hi
        segs.append(_curve_for(c, lo, hi))
    return CrossSection(tuple(segs), config.regime, xb, p1, p2, note)


def section_same(p1: Point, p2: Point, x_bar: float) -> CrossSection:
    """Three circle arcs through the corners and the split point (equal speeds)."""
    if p1.x > p2.x:
        raise ValueError("section_same expects x1 <= x2")
    config = GameConfig(1.0, 1.0, 1.0, x_bar)
    note = None
    if p1 == p2:
        note = "coincident pursuers: single-pursuer barrier"
    else:
        try:
            xI = split_point_same(p1, p2)
            if not 0.0 <= xI <= x_bar:
                note = f"split point {xI:.6g} outside [0, {x_bar:g}]: dominance envelope"
        except VerticalBisector:
            note = "pursuers share an abscissa: dominance envelope"
    if note is not None:
        return envelope_section(p1, p2, config, note)
    x1, y1, x2, y2 = p1.x, p1.y, p2.x, p2.y
    segs = [
        _circle(0.0, x1**2 + y1**2, 0.0, x1),
        _circle(xI, (x1 - xI) ** 2 + y1**2, x1, x2),
        _circle(x_bar, (x2 - x_bar) ** 2 + y2**2, x2, x_bar),
    ]
    return CrossSection(tuple(s for s in segs if not s.empty), Regime.SAME_SPEED, x_bar, p1, p2)


def section_fast(p1: Point, p2: Point, config: GameConfig) -> CrossSection:
    """Circle, hyperbola, circle, hyperbola, circle for two faster pursuers (canonical labels)."""
    if config.regime is not Regime.FAST_PURSUERS:
        raise ValueError("section_fast needs the fast-pursuer regime")
    if config.v1 > config.v2:
        raise ValueError("section_fast expects v1 <= v2")
    cs = canonicalize(GameState(Point(0.0, 1.0), p1, p2), config)
    if cs.swapped or cs.reflected:
        raise ValueError("section_fast expects canonical labels (slower pursuer on the left)")
    xI, note = regular_split_fast(cs)
    if note is not None:
        return envelope_section(p1, p2, config, note)
    xb = config.x_bar
    g1, g2 = config.gamma1, config.gamma2
    k1, k2 = g1 * g1, g2 * g2
    t1, t2, t3, t4 = fast_thresholds(xI, p1.x, p2.x, g1, g2, xb)
    segs = [
        _circle(0.0, k1 * (p1.x**2 + p1.y**2), 0.0, t1),
        _hyperbola(p1, g1, t1, t2),
        _circle(xI, k1 * ((p1.x - xI) ** 2 + p1.y**2), t2, t3),
        _hyperbola(p2, g2, t3, t4),
        _circle(xb, k2 * ((p2.x - xb) ** 2 + p2.y**2), t4, xb),
    ]
    return CrossSection(tuple(s for s in segs if not s.empty), Regime.FAST_PURSUERS, xb, p1, p2)


def cross_section(p1: Point, p2: Point, config: GameConfig) -> CrossSection:
    """Cross-section for pursuers in any labelling, reported in the caller's frame."""
    cs = canonicalize(GameState(Point(0.0, 1.0), p1, p2), config)
    q1, q2 = cs.state.p1, cs.state.p2
    if config.regime is Regime.SAME_SPEED:
        sec = section_same(q1, q2, config.x_bar) if cs.degraded is None else envelope_section(q1, q2, cs.config, cs.degraded)
    else:
        sec = section_fast(q1, q2, cs.config)
    if cs.reflected:
        sec = CrossSection(
            tuple(s.reflected(config.x_bar) for s in reversed(sec.segments)),
            sec.regime,
            sec.x_bar,
            sec.p1,
            sec.p2,
            sec.degraded,
        )
    return CrossSection(sec.segments, sec.regime, sec.x_bar, p1, p2, sec.degraded)


def sample_section(cs: CrossSection, n_per_segment: int) -> List[Tuple[int, Point]]:
    """``n_per_segment`` evenly spaced points on every non-empty segment, tagged with the segment index."""
    if n_per_segment < 2:
        raise UsageError("n_per_segment must be >= 2")
    out: List[Tuple[int, Point]] = []
    for idx, seg in enumerate(cs.segments):
        if seg.empty:
            continue
        for j in range(n_per_segment):
            x = seg.lo + (seg.hi - seg.lo) * j / (n_per_segment - 1)
            out.append((idx, Point(x, seg.y_at(x))))
    return out


def _csv_bytes(cs: CrossSection, samples) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["segment_index", "kind", "x", "y"])
    for idx, p in samples:
        w.writerow([idx, cs.segments[idx].kind.value, repr(p.x), repr(p.y)])
    return buf.getvalue().encode("utf-8")


def _json_bytes(cs: CrossSection, samples) -> bytes:
    doc = cs.as_dict()
    doc["samples"] = [{"segment_index": i, "x": p.x, "y": p.y} for i, p in samples]
    return (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode("utf-8")


def _svg_bytes(cs: CrossSection, samples) -> bytes:
    if not samples:
        raise UsageError("SVG export needs at least one sample")
    xb = cs.x_bar
    y_max = 1.2 * max(max(p.y for _, p in samples), cs.p1.y, cs.p2.y, 1e-9 * xb)
    width = 800.0
    sx = width / xb
    height = y_max * sx
    pad = 20.0

    def px(x: float, y: float) -> str:
        return f"{pad + x * sx:.3f},{pad + height - y * sx:.3f}"

    curve = " ".join(px(p.x, p.y) for _, p in samples)
    shade = f"{px(samples[0][1].x, 0.0)} {curve} {px(samples[-1][1].x, 0.0)}"
    title = html.escape(f"Barrier cross-section ({cs.regime.value})")
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width + 2 * pad:.0f}" height="{height + 2 * pad:.0f}">',
        f"<title>{title}</title>",
        f'<rect x="{pad}" y="{pad}" width="{width:.3f}" height="{height:.3f}" fill="#fbeaea" stroke="black"/>',
        f'<polygon id="evader-region" points="{shade}" fill="#e3f1e3" stroke="none"/>',
        f'<line id="goal-line" x1="{pad}" y1="{pad + height:.3f}" x2="{pad + width:.3f}" y2="{pad + height:.3f}" stroke="green" stroke-width="3"/>',
        f'<polyline id="barrier" points="{curve}" fill="none" stroke="black" stroke-width="2"/>',
    ]
    for name, p in (("P1", cs.p1), ("P2", cs.p2)):
        cx, cy = px(p.x, p.y).split(",")
        lines.append(f'<circle id="{name}" cx="{cx}" cy="{cy}" r="5" fill="red"/>')
        lines.append(f'<text x="{float(cx) + 7:.3f}" y="{float(cy) - 7:.3f}" font-size="14">{name}</text>')
    lines.append("</svg>")
    return ("\n".join(lines) + "\n").encode("utf-8")


_EXPORTERS = {"csv": _csv_bytes, "json": _json_bytes, "svg": _svg_bytes}


def export_section(cs: CrossSection, samples: Sequence[Tuple[int, Point]], fmt: str) -> bytes:
    """Serialize a section and its samples as CSV, JSON or SVG bytes."""
    try:
        exporter = _EXPORTERS[fmt.lower()]
    except KeyError:
        raise UsageError(f"unsupported format {fmt!r}; expected csv, json or svg") from None
    return exporter(cs, list(samples))


def load_section_json(data: bytes | str) -> CrossSection:
    return CrossSection.from_dict(json.loads(data))
