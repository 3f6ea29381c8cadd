import math

import numpy as np
import pytest

from footballgame.barrier import (
    Active,
    CaptureMode,
    Outcome,
    Segment,
    barrier_fast,
    canonicalize,
    classify,
    envelope_barrier,
    fast_thresholds,
    regular_split_fast,
    split_point_fast,
    split_point_same,
)
from footballgame.errors import AlreadyTerminal, InvalidRatio, OutOfDomain, VerticalBisector
from footballgame.game import GameConfig, GameState
from footballgame.geometry import Point
from footballgame.oracle import goal_margin, random_states

SAME = GameConfig(1.0, 1.0, 1.0, 10.0)
FAST = GameConfig(0.5, 1.0, 2.0, 10.0)
FAST20 = GameConfig(0.5, 1.0, 2.0, 20.0)


def st(*coords):
    return GameState.from_coords(*coords)


# split points


def test_split_same_equal_heights():
    assert split_point_same(Point(2, 2), Point(6, 2)) == 4.0
    assert split_point_same(Point(0, 1), Point(2, 1)) == 1.0


def test_split_same_is_equidistant():
    x = split_point_same(Point(1, 1), Point(3, 2))
    assert x == 2.75
    g = Point(x, 0)
    assert g.dist2(Point(1, 1)) == pytest.approx(g.dist2(Point(3, 2)), abs=1e-12)


def test_split_same_rejects_shared_abscissa():
    with pytest.raises(VerticalBisector):
        split_point_same(Point(3, 1), Point(3, 4))


def test_split_fast_worked_root():
    x = split_point_fast(Point(0, 1), Point(4, 2), 0.5)
    assert x == pytest.approx(4 / 3, abs=1e-12)
    # on the pursuers' Apollonius circle: P1 gets there in the same time as P2
    g = Point(x, 0)
    assert g.dist(Point(0, 1)) == pytest.approx(0.5 * g.dist(Point(4, 2)), abs=1e-12)
    assert (x + 4 / 3) ** 2 + (2 / 3) ** 2 == pytest.approx(68 / 9, abs=1e-12)


def test_split_fast_irrational_root():
    x = split_point_fast(Point(4, 2), Point(12, 2), 0.5)
    assert x == pytest.approx((1 + math.sqrt(13.75)) / 0.75, abs=1e-12)
    residual = Point(x, 0).dist2(Point(4, 2)) - 0.25 * Point(x, 0).dist2(Point(12, 2))
    assert abs(residual) <= 1e-9


def test_split_fast_no_axis_reach():
    assert split_point_fast(Point(0, 5), Point(1, 0.1), 0.5) is None


@pytest.mark.parametrize("gamma", [1.0, 1.2, 0.0])
def test_split_fast_rejects_bad_ratio(gamma):
    with pytest.raises(InvalidRatio):
        split_point_fast(Point(0, 1), Point(4, 2), gamma)


# canonical labelling


def test_canonicalize_orders_equal_speed_pursuers():
    cs = canonicalize(st(4, 1, 6, 2, 2, 2), SAME)
    assert cs.swapped
    assert (cs.state.p1, cs.state.p2) == (Point(2, 2), Point(6, 2))


def test_canonicalize_puts_slower_pursuer_first():
    cs = canonicalize(st(4, 1, 1, 2, 6, 2), GameConfig(0.5, 2.0, 1.0, 10.0))
    assert cs.swapped
    assert (cs.config.v1, cs.config.v2) == (1.0, 2.0)


def test_canonicalize_flags_coincident_pursuers():
    assert canonicalize(st(4, 1, 2, 2, 2, 2), SAME).degraded


# same-speed worked states


def test_same_corner_state_on_barrier():
    ev = classify(st(0, 3, 3, 0, 10, 5), GameConfig(1, 1, 1, 12))
    assert (ev.segment, ev.value, ev.outcome) == (Segment.S1, 0.0, Outcome.ON_BARRIER)


def test_same_middle_state_on_barrier():
    ev = classify(st(4, 2 * math.sqrt(2), 2, 2, 6, 2), SAME)
    assert ev.segment is Segment.S2
    assert ev.value == pytest.approx(0.0, abs=1e-12)
    assert ev.outcome is Outcome.ON_BARRIER
    assert ev.capture_mode is CaptureMode.SIMULTANEOUS
    g = Point(4, 0)
    assert g.dist(Point(4, 2 * math.sqrt(2))) == pytest.approx(g.dist(Point(2, 2)))
    assert g.dist(Point(2, 2)) == pytest.approx(g.dist(Point(6, 2)))


def test_same_middle_state_evader_wins():
    state = st(4, 1, 2, 2, 6, 2)
    ev = classify(state, SAME)
    assert (ev.segment, ev.value, ev.outcome, ev.active) == (Segment.S2, 7.0, Outcome.EVADER_WIN, Active.BOTH)
    assert goal_margin(state, SAME).margin > 0


def test_same_corner_state_pursuers_win():
    state = st(1, 3, 2, 1, 9, 1)
    ev = classify(state, SAME)
    assert (ev.segment, ev.value, ev.outcome) == (Segment.S1, -5.0, Outcome.PURSUER_WIN)
    assert goal_margin(state, SAME).margin < 0


def test_same_right_corner_reported_for_swapped_labels():
    ev = classify(st(9, 1, 8, 2, 2, 2), SAME)
    assert ev.segment is Segment.S3
    assert ev.active is Active.P1_ONLY


# fast worked states


def test_fast_left_corner_on_barrier():
    ev = classify(st(0, 1, 0, 2, 9, 3), FAST)
    assert ev.segment is Segment.S1
    assert ev.value == pytest.approx(0.0, abs=1e-15)
    assert ev.outcome is Outcome.ON_BARRIER


def test_fast_tangency_on_barrier():
    state = st(4, 1, 4, 2, 12, 2)
    xI, note = regular_split_fast(canonicalize(state, FAST20))
    assert note is None
    t1, t2, _, _ = fast_thresholds(xI, 4, 12, 0.5, 0.25, 20)
    assert t1 == 1.0 and t1 < 4 <= t2
    assert t2 == pytest.approx(0.75 * xI + 1, abs=1e-12)
    ev = classify(state, FAST20)
    assert (ev.segment, ev.active, ev.outcome) == (Segment.S2, Active.P1_ONLY, Outcome.ON_BARRIER)
    assert ev.value == pytest.approx(0.0, abs=1e-12)
    # P1's Apollonius circle against the evader touches the axis
    cy, r = (1 - 0.25 * 2) / 0.75, 0.5 / 0.75 * 1
    assert cy == pytest.approx(r, abs=1e-15)


def test_fast_middle_state_equal_arrivals():
    state = st(4 / 3, 5 / 6, 0, 1, 4, 2)
    ev = classify(state, FAST)
    assert (ev.segment, ev.capture_mode, ev.outcome) == (Segment.S3, CaptureMode.SIMULTANEOUS, Outcome.ON_BARRIER)
    assert ev.value == pytest.approx(0.0, abs=1e-12)
    g = Point(4 / 3, 0)
    times = [g.dist(state.evader) / 0.5, g.dist(state.p1) / 1.0, g.dist(state.p2) / 2.0]
    assert times == pytest.approx([5 / 3] * 3, rel=1e-6)


def test_fast_right_tangency_and_corner():
    cfg = GameConfig(0.5, 0.8, 1.0, 20.0)
    ev = classify(st(16, 1, 4, 2, 16, 2), cfg)
    assert (ev.segment, ev.active, ev.outcome) == (Segment.S4, Active.P2_ONLY, Outcome.ON_BARRIER)
    ev = classify(st(19.5, math.sqrt(4.75), 4, 2, 16, 2), cfg)
    assert (ev.segment, ev.outcome) == (Segment.S5, Outcome.ON_BARRIER)


def test_fast_mirrored_layout_reports_positional_segment():
    state = st(4, 1, 4, 2, 12, 2).reflected(20)
    ev = classify(state, FAST20)
    assert (ev.segment, ev.active, ev.outcome) == (Segment.S4, Active.P1_ONLY, Outcome.ON_BARRIER)


def test_fast_no_axis_reach_is_degraded():
    ev = classify(st(5, 3, 0, 5, 1, 0.1), FAST)
    assert ev.degraded
    assert ev.active is Active.P2_ONLY
    assert (ev.value > 0) == (goal_margin(st(5, 3, 0, 5, 1, 0.1), FAST).margin > 0)


# terminal and domain


def test_terminal_states_rejected():
    with pytest.raises(AlreadyTerminal) as info:
        classify(st(4, 0, 2, 2, 6, 2), SAME)
    assert str(info.value) == "AlreadyTerminal(GoalReached)"
    with pytest.raises(AlreadyTerminal) as info:
        classify(st(2, 2, 2, 2, 6, 2), SAME)
    assert str(info.value) == "AlreadyTerminal(CapturedByP1)"


def test_out_of_field_rejected():
    with pytest.raises(OutOfDomain):
        classify(st(11, 1, 2, 2, 6, 2), SAME)


# properties over random placements


def _states(config, n, seed):
    return random_states(config, np.random.default_rng(seed), n)


def _scale(config):
    return 1.0 + config.x_bar**2


@pytest.mark.parametrize(
    "config",
    [SAME, FAST, GameConfig(0.5, 1, 1, 10), GameConfig(0.3, 0.9, 0.6, 10)],
    ids=["same", "fast", "fast-equal", "fast-swapped"],
)
def test_scaling_covariance(config):
    for s in _states(config, 300, 7):
        ev = classify(s, config)
        for lam in (0.1, 10.0):
            ev2 = classify(s.scaled(lam), config.scaled(lam))
            assert ev2.value == pytest.approx(lam**2 * ev.value, rel=1e-9, abs=1e-9 * lam**2 * _scale(config))
            if ev.outcome is not Outcome.ON_BARRIER:
                assert ev2.outcome is ev.outcome
            assert ev2.segment is ev.segment


def test_reflection_same_speed_keeps_value():
    mirror = {Segment.S1: Segment.S3, Segment.S2: Segment.S2, Segment.S3: Segment.S1}
    for s in _states(SAME, 300, 8):
        ev = classify(s, SAME)
        ev2 = classify(s.reflected(10).swapped(), SAME)
        assert ev2.value == pytest.approx(ev.value, abs=1e-9 * _scale(SAME))
        assert ev2.segment is mirror[ev.segment]


@pytest.mark.parametrize("config", [FAST, GameConfig(0.3, 0.9, 0.6, 10)])
def test_reflection_fast_keeps_outcome(config):
    for s in _states(config, 300, 9):
        ev = classify(s, config)
        ev2 = classify(s.reflected(10).swapped(), config.swapped())
        assert ev2.outcome is ev.outcome
        assert ev2.value == pytest.approx(ev.value, abs=1e-9 * _scale(config))
        assert ev2.segment.value == 6 - ev.segment.value


def test_gamma_to_one_matches_same_speed():
    near = GameConfig(1 - 1e-6, 1.0, 1.0, 10.0)
    checked = 0
    for s in _states(SAME, 500, 10):
        ev = classify(s, SAME)
        if abs(ev.value) <= 1e-3:
            continue
        assert classify(s, near).outcome is ev.outcome
        checked += 1
    assert checked > 400


def _regular(state, config):
    cs = canonicalize(state, config)
    return cs, regular_split_fast(cs)


@pytest.mark.parametrize("config", [FAST, GameConfig(0.8, 1.0, 1.25, 10), GameConfig(0.3, 0.6, 0.9, 10)])
def test_fast_thresholds_are_ordered_in_regular_layouts(config):
    seen = 0
    for s in _states(config, 400, 11):
        cs, (xI, note) = _regular(s, config)
        if note is not None or cs.reflected:
            continue
        t = fast_thresholds(xI, cs.state.p1.x, cs.state.p2.x, config.gamma1, config.gamma2, config.x_bar)
        assert list(t) == sorted(t)
        seen += 1
    assert seen > 20


@pytest.mark.parametrize("config", [SAME, FAST, GameConfig(0.8, 1.0, 1.25, 10), GameConfig(0.5, 1, 1, 10)])
def test_barrier_continuous_across_thresholds(config):
    rng = np.random.default_rng(12)
    checked = 0
    for s in _states(config, 400, 13):
        cs = canonicalize(s, config)
        p1, p2 = cs.state.p1, cs.state.p2
        if config.regime.value == "SameSpeed":
            if cs.degraded or p1.x == p2.x:
                continue
            xI = split_point_same(p1, p2)
            if not 0 <= xI <= config.x_bar:
                continue
            cuts = [p1.x, p2.x]
        else:
            xI, note = regular_split_fast(cs)
            if note is not None:
                continue
            cuts = list(fast_thresholds(xI, p1.x, p2.x, cs.config.gamma1, cs.config.gamma2, config.x_bar))
        for c in cuts:
            if not 0 < c < config.x_bar:
                continue
            # every piece has the form A - k*yE^2 at fixed xE; solve for its zero
            lo = classify(GameState(Point(c, 1.0), p1, p2), cs.config).value
            hi = classify(GameState(Point(c, 2.0), p1, p2), cs.config).value
            k = (lo - hi) / 3.0
            a = lo + k
            if a <= 0:
                continue
            y0 = math.sqrt(a / k)
            at = GameState(Point(c, y0), p1, p2)
            if at.terminal_cause() is not None:
                # equal speeds: the junction is the pursuer itself
                continue
            past = GameState(Point(math.nextafter(c, math.inf), y0), p1, p2)
            left, right = classify(at, cs.config), classify(past, cs.config)
            assert left.degraded is None
            assert abs(left.value) <= 1e-9 * _scale(config)
            assert abs(right.value) <= 1e-9 * _scale(config)
            y = rng.uniform(0.1, config.x_bar)
            left = classify(GameState(Point(c, y), p1, p2), cs.config).value
            right = classify(GameState(Point(math.nextafter(c, math.inf), y), p1, p2), cs.config).value
            assert (left > 0) == (right > 0)
            checked += 1
    assert checked > 50


@pytest.mark.parametrize("config", [SAME, FAST, GameConfig(0.5, 1, 1, 10), GameConfig(0.3, 0.9, 0.6, 10)])
def test_envelope_matches_closed_form_in_regular_layouts(config):
    compared = 0
    for s in _states(config, 400, 14):
        ev = classify(s, config)
        if ev.degraded:
            continue
        cs = canonicalize(s, config)
        env = envelope_barrier(cs, "check")
        assert env.value == pytest.approx(ev.value, abs=1e-9 * _scale(config))
        compared += 1
    assert compared > 50


def test_barrier_fast_requires_fast_regime():
    with pytest.raises(ValueError):
        barrier_fast(canonicalize(st(4, 1, 2, 2, 6, 2), SAME))
