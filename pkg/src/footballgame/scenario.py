"""Scenario files: one flat JSON object describing players, speeds and the field.

Example::

    {"schema_version": 1,
     "xE": 4, "yE": 1, "x1": 2, "y1": 2, "x2": 6, "y2": 2,
     "vE": 1, "v1": 1, "v2": 1, "x_bar": 10}

Optional keys: tol, oracle_resolution, dt, eps, t_max, seed.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional

from .errors import GameError
from .game import GameConfig, GameState

SCHEMA_VERSION = 1

REQUIRED = ("xE", "yE", "x1", "y1", "x2", "y2", "vE", "v1", "v2", "x_bar")
OPTIONAL_FLOAT = ("tol", "dt", "eps", "t_max")
OPTIONAL_INT = ("oracle_resolution", "seed")
KNOWN = frozenset(("schema_version",) + REQUIRED + OPTIONAL_FLOAT + OPTIONAL_INT)


class ScenarioError(GameError):
    """Malformed scenario file; the message carries file, line and field."""


@dataclass(frozen=True)
class Scenario:
    state: GameState
    config: GameConfig
    overrides: Dict[str, Any] = field(default_factory=dict)

    def get(self, key: str, default=None):
        return self.overrides.get(key, default)

    def to_dict(self) -> dict:
        s, c = self.state, self.config
        doc = {"schema_version": SCHEMA_VERSION}
        doc.update(zip(("xE", "yE", "x1", "y1", "x2", "y2"), s.as_tuple()))
        doc.update(vE=c.vE, v1=c.v1, v2=c.v2, x_bar=c.x_bar)
        doc.update(self.overrides)
        return doc


def _line_of(text: str, key: str) -> Optional[int]:
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    return None if m is None else text.count("\n", 0, m.start()) + 1


def parse_scenario(text: str, source: str = "<scenario>") -> Scenario:
    def fail(key: str, msg: str) -> ScenarioError:
        line = _line_of(text, key)
        where = f"{source}:{line}" if line else source
        return ScenarioError(f"{where}: field '{key}': {msg}")

    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioError(f"{source}:{e.lineno}:{e.colno}: {e.msg}") from None
    if not isinstance(doc, dict):
        raise ScenarioError(f"{source}: top level must be a JSON object")
    for key in doc:
        if key not in KNOWN:
            raise fail(key, "unknown field")
    if "schema_version" not in doc:
        raise ScenarioError(f"{source}: field 'schema_version': missing")
    if doc["schema_version"] != SCHEMA_VERSION:
        raise fail("schema_version", f"unsupported version {doc['schema_version']!r} (expected {SCHEMA_VERSION})")

    values: Dict[str, float] = {}
    for key in REQUIRED:
        if key not in doc:
            raise ScenarioError(f"{source}: field '{key}': missing")
        v = doc[key]
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            raise fail(key, f"expected a finite number, got {v!r}")
        values[key] = float(v)
    overrides: Dict[str, Any] = {}
    for key in OPTIONAL_FLOAT:
        if key in doc:
            v = doc[key]
            if isinstance(v, bool) or not isinstance(v, (int, float)) or not v > 0:
                raise fail(key, f"expected a positive number, got {v!r}")
            overrides[key] = float(v)
    for key in OPTIONAL_INT:
        if key in doc:
            v = doc[key]
            if isinstance(v, bool) or not isinstance(v, int):
                raise fail(key, f"expected an integer, got {v!r}")
            overrides[key] = v

    try:
        config = GameConfig(
            values["vE"],
            values["v1"],
            values["v2"],
            values["x_bar"],
            tol=overrides.get("tol"),
            oracle_resolution=overrides.get("oracle_resolution", 2048),
        )
    except ValueError as e:
        raise ScenarioError(f"{source}: {e}") from None
    state = GameState.from_coords(*(values[k] for k in ("xE", "yE", "x1", "y1", "x2", "y2")))
    return Scenario(state, config, overrides)


def load_scenario(path: str | Path) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ScenarioError(f"{path}: cannot read: {e.strerror}") from None
    return parse_scenario(text, str(path))
