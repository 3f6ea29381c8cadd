"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or malformed input,
3 unsupported speed regime, 4 state already terminal, 5 output I/O error,
6 simulator timeout.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional

from .barrier import Outcome, classify
from .errors import AlreadyTerminal, OutOfDomain, UnsupportedRegime, UsageError
from .game import GameConfig, TerminalCause
from .oracle import band_tolerance, barrier_states, goal_margin, sweep_agreement
from .scenario import ScenarioError, load_scenario
from .section import cross_section, export_section, sample_section
from .simulate import simulate

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_REGIME = 3
EXIT_TERMINAL = 4
EXIT_IO = 5
EXIT_TIMEOUT = 6

OUT_DIR_ENV = "FOOTBALLGAME_OUT_DIR"

log = logging.getLogger("footballgame")


class _IOFailure(Exception):
    pass


def _out_path(arg: Optional[str], default_name: str) -> Path:
    if arg:
        return Path(arg)
    return Path(os.environ.get(OUT_DIR_ENV, ".")) / default_name


def _write(path: Path, data: bytes) -> None:
    try:
        path.write_bytes(data)
    except OSError as e:
        raise _IOFailure(f"cannot write {path}: {e.strerror}") from None


def _dumps(doc) -> bytes:
    return (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode("utf-8")


def _fmt(v: float) -> str:
    return f"{v:.12g}"


def cmd_classify(args) -> int:
    sc = load_scenario(args.scenario)
    ev = classify(sc.state, sc.config)
    if args.json:
        doc = ev.as_dict()
        doc["regime"] = sc.config.regime.value
        sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")
    else:
        print(
            f"{ev.outcome.value} B={_fmt(ev.value)} segment={ev.segment.name} "
            f"active={ev.active.value} capture={ev.capture_mode.value}"
        )
        if ev.degraded:
            print(f"note: {ev.degraded}")
    return EXIT_OK


def cmd_section(args) -> int:
    if args.samples < 2:
        raise UsageError("--samples must be >= 2")
    sc = load_scenario(args.scenario)
    cs = cross_section(sc.state.p1, sc.state.p2, sc.config)
    samples = sample_section(cs, args.samples)
    data = export_section(cs, samples, args.format)
    path = _out_path(args.out, f"section.{args.format}")
    _write(path, data)
    for i, seg in enumerate(cs.segments):
        coeffs = ", ".join(_fmt(c) for c in seg.coefficients)
        print(f"[{i}] {seg.kind.value} x in [{_fmt(seg.lo)}, {_fmt(seg.hi)}] coefficients=({coeffs})")
    if cs.degraded:
        print(f"note: {cs.degraded}")
    print(f"wrote {len(samples)} samples to {path}")
    return EXIT_OK


def _verify_scenario(args) -> tuple[dict, bool]:
    sc = load_scenario(args.scenario)
    ev = classify(sc.state, sc.config)
    gm = goal_margin(sc.state, sc.config)
    doc = {"scenario": str(args.scenario), "barrier": ev.as_dict(), "margin": gm.margin, "argmax_x": gm.argmax_x}
    if ev.outcome is Outcome.ON_BARRIER:
        tol = band_tolerance(sc.config)
        ok = abs(gm.margin) <= tol
        doc["check"] = {"kind": "barrier_band", "tolerance": tol}
        print(f"|margin| <= 1e-4*x_bar: {'pass' if ok else 'FAIL'} (margin={gm.margin:.3e})")
    else:
        ok = (ev.value > 0) == (gm.margin > 0) and gm.margin != 0.0
        doc["check"] = {"kind": "sign_agreement"}
        print(f"sign(B) == sign(margin): {'pass' if ok else 'FAIL'} (B={_fmt(ev.value)}, margin={gm.margin:.6g})")
    doc["passed"] = ok
    return doc, ok


def _verify_random(args) -> tuple[dict, bool]:
    if args.speeds:
        vE, v1, v2 = args.speeds
    else:
        vE, v1, v2 = (1.0, 1.0, 1.0) if args.regime == "same" else (0.5, 1.0, 2.0)
    config = GameConfig(vE, v1, v2, args.x_bar)
    expected = {"same": "SameSpeed", "fast": "FastPursuers"}[args.regime]
    if config.regime.value != expected:
        raise UsageError(f"--speeds {vE} {v1} {v2} do not form the {args.regime} regime")
    report = sweep_agreement(config, args.random, args.seed, workers=args.workers)
    print(
        f"sweep: {report.n_checked} states, {report.agreements} agree, "
        f"{len(report.disagreements)} disagree ({report.degraded} outside the regular layout)"
    )
    if report.warning:
        print(f"warning: {report.warning}")
    for d in report.disagreements:
        print(f"  disagreement #{d['index']}: state={d['state']} B={d['B']:.6g} margin={d['margin']:.6g}")

    tol = band_tolerance(config)
    states = barrier_states(config, args.band_states, args.seed)
    band = {"tolerance": tol, "per_segment": args.band_states, "segments": {}}
    band_ok = True
    for label, group in states.items():
        worst = max((abs(goal_margin(s, config).margin) for s in group), default=0.0)
        seg_ok = worst <= tol and len(group) == args.band_states
        band_ok &= seg_ok
        band["segments"][label] = {"count": len(group), "max_abs_margin": worst, "passed": seg_ok}
        print(f"band {label}: {len(group)} states, max |margin| = {worst:.3e} <= {tol:.1e}: {'pass' if seg_ok else 'FAIL'}")
    ok = report.passed and band_ok
    return {"sweep": report.as_dict(), "band_check": band, "passed": ok}, ok


def cmd_verify(args) -> int:
    if (args.scenario is None) == (args.random is None):
        raise UsageError("give either a scenario file or --random N")
    doc, ok = _verify_scenario(args) if args.scenario else _verify_random(args)
    path = _out_path(args.out, "verify_report.json")
    _write(path, _dumps(doc))
    print(f"report: {path}")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def cmd_simulate(args) -> int:
    sc = load_scenario(args.scenario)
    sc.state.validate(sc.config)
    dt = args.dt if args.dt is not None else sc.get("dt")
    eps = args.eps if args.eps is not None else sc.get("eps")
    tmax = args.tmax if args.tmax is not None else sc.get("t_max")
    traj = simulate(sc.state, sc.config, dt=dt, eps=eps, t_max=tmax)
    path = _out_path(args.out, "trajectory.csv")
    _write(path, traj.to_csv())
    print(f"terminal={traj.terminal.value} t={_fmt(traj.times[-1])} steps={len(traj.times) - 1}")
    if traj.capture_point is not None:
        print(f"capture_point=({_fmt(traj.capture_point.x)}, {_fmt(traj.capture_point.y)})")
    print(f"trajectory: {path}")
    return EXIT_TIMEOUT if traj.terminal is TerminalCause.TIMEOUT else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="footballgame", description="Game of kind for the two-pursuer football game.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="evaluate the barrier and report the winner")
    p.add_argument("scenario")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("section", help="build and export the barrier cross-section")
    p.add_argument("scenario")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    p.set_defaults(func=cmd_section)

    p = sub.add_parser("verify", help="check the barrier against the dominance oracle")
    p.add_argument("scenario", nargs="?")
    p.add_argument("--random", type=int, metavar="N")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--regime", choices=("same", "fast"), default="same")
    p.add_argument("--speeds", type=float, nargs=3, metavar=("VE", "V1", "V2"))
    p.add_argument("--x-bar", type=float, default=10.0)
    p.add_argument("--band-states", type=int, default=100)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="run the heuristic-strategy simulator")
    p.add_argument("scenario")
    p.add_argument("--dt", type=float)
    p.add_argument("--eps", type=float)
    p.add_argument("--tmax", type=float)
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ScenarioError, UsageError, OutOfDomain, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except UnsupportedRegime as e:
        print(f"UnsupportedRegime: {e}", file=sys.stderr)
        return EXIT_REGIME
    except AlreadyTerminal as e:
        print(str(e), file=sys.stderr)
        return EXIT_TERMINAL
    except _IOFailure as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
