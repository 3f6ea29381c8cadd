"""Game of kind for the two-pursuer, one-evader football pursuit-evasion game."""

from .barrier import (
    Active,
    BarrierEvaluation,
    CanonicalState,
    CaptureMode,
    Outcome,
    Segment,
    barrier_fast,
    barrier_same,
    canonicalize,
    classify,
    split_point_fast,
    split_point_same,
)
from .errors import (
    AlreadyTerminal,
    DegenerateInput,
    GameError,
    InvalidRatio,
    OutOfDomain,
    SectionInconsistency,
    UnsupportedRegime,
    UsageError,
    VerticalBisector,
)
from .game import GameConfig, GameState, Regime, TerminalCause
from .geometry import Circle, ImplicitLine, Point, apollonius_circle, axis_crossings, orthogonal_bisector
from .oracle import GoalMargin, barrier_states, goal_margin, sweep_agreement
from .section import CrossSection, CurveSegment, cross_section, export_section, sample_section, section_fast, section_same
from .simulate import Trajectory, simulate

__version__ = "0.1.0"
