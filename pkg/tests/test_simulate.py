import math

import pytest

from footballgame.errors import AlreadyTerminal, UsageError
from footballgame.game import GameConfig, GameState, TerminalCause
from footballgame.geometry import Point
from footballgame.simulate import intercept_distance, simulate

SAME = GameConfig(1.0, 1.0, 1.0, 10.0)
FAST = GameConfig(0.5, 1.0, 2.0, 10.0)


def test_intercept_equal_speed_head_on():
    # evader runs straight at a resting equal-speed pursuer: they meet halfway
    s = intercept_distance(Point(0, 0), (1.0, 0.0), Point(4, 0), 1.0)
    assert s == pytest.approx(2.0)


def test_intercept_equal_speed_running_away():
    assert intercept_distance(Point(0, 0), (1.0, 0.0), Point(-4, 0), 1.0) is None


def test_intercept_faster_pursuer():
    s = intercept_distance(Point(0, 0), (1.0, 0.0), Point(-3, 0), 2.0)
    assert s == pytest.approx(3.0)
    z = Point(s, 0)
    assert z.dist(Point(-3, 0)) == pytest.approx(2.0 * s)


def test_evader_win_reaches_goal():
    traj = simulate(GameState.from_coords(4, 1, 2, 2, 6, 2), SAME, dt=1e-3, eps=1e-2)
    assert traj.terminal is TerminalCause.GOAL_REACHED
    final = traj.states[-1]
    assert final.evader.y == 0.0
    assert min(final.evader.dist(final.p1), final.evader.dist(final.p2)) > 1e-2


def test_pursuer_win_captures_above_goal():
    traj = simulate(GameState.from_coords(4 / 3, 5 / 6 + 0.2, 0, 1, 4, 2), FAST)
    assert traj.terminal in (TerminalCause.CAPTURED_BY_P1, TerminalCause.SIMULTANEOUS_CAPTURE)
    assert traj.capture_point.y > 0


def test_immediate_goal():
    eps, dt = 0.1, 1e-2
    traj = simulate(GameState.from_coords(5, eps / 2, 0, 9, 10, 9), SAME, dt=dt, eps=eps)
    assert traj.terminal is TerminalCause.GOAL_REACHED
    assert len(traj.times) - 1 <= math.ceil((eps / 2) / (SAME.vE * dt))


def test_players_never_exceed_their_speed():
    dt = 1e-2
    traj = simulate(GameState.from_coords(5, 4, 2, 3, 8, 6), FAST, dt=dt)
    for (t0, a), (t1, b) in zip(traj.samples[:-1], traj.samples[1:]):
        step = t1 - t0
        assert a.evader.dist(b.evader) <= FAST.vE * step * (1 + 1e-12)
        assert a.p1.dist(b.p1) <= FAST.v1 * step * (1 + 1e-12)
        assert a.p2.dist(b.p2) <= FAST.v2 * step * (1 + 1e-12)


def test_timeout_reported():
    traj = simulate(GameState.from_coords(5, 9, 0.1, 0.1, 9.9, 0.1), SAME, dt=1e-2, t_max=0.5)
    assert traj.terminal is TerminalCause.TIMEOUT


def test_capture_at_start():
    traj = simulate(GameState.from_coords(5, 5, 5.001, 5, 9, 1), SAME, eps=0.01)
    assert traj.terminal is TerminalCause.CAPTURED_BY_P1


def test_csv_columns():
    traj = simulate(GameState.from_coords(5, 0.02, 0, 9, 10, 9), SAME, dt=1e-2)
    lines = traj.to_csv().decode().splitlines()
    assert lines[0] == "t,xE,yE,x1,y1,x2,y2"
    assert len(lines) == len(traj.times) + 1


def test_rejects_bad_step_and_terminal_start():
    with pytest.raises(UsageError):
        simulate(GameState.from_coords(4, 1, 2, 2, 6, 2), SAME, dt=0.0)
    with pytest.raises(AlreadyTerminal):
        simulate(GameState.from_coords(4, 0, 2, 2, 6, 2), SAME)
