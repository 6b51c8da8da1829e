"""Instance files, report serialization and random instance generators."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, Optional

import numpy as np

from .errors import DuplicatePoints, NonFiniteCoordinate, ParseError
from .geom import DEFAULT_TOL, Tolerance
from .spanning import Instance

GENERATORS = ("uniform-square", "gaussian", "clustered", "circle-boundary")


@dataclass
class RunConfig:
    seed: int = 0
    trials: int = 1
    n_range: tuple = (2, 256)
    generator: str = "uniform-square"
    tol: Tolerance = DEFAULT_TOL
    circle_radius: float = 1.0
    report_path: Optional[str] = None
    figure_path: Optional[str] = None

    def __post_init__(self):
        lo, hi = self.n_range
        if lo < 2 or hi < lo:
            raise ValueError(f"bad n_range {self.n_range}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.generator not in GENERATORS:
            raise ValueError(f"unknown generator {self.generator!r}; choose from {GENERATORS}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")


def instance_from_json(doc, source: str = "<json>") -> Instance:
    if not isinstance(doc, dict) or "points" not in doc:
        raise ParseError(f"{source}: expected an object with a 'points' field")
    pts = doc["points"]
    if not isinstance(pts, list) or not pts:
        raise ParseError(f"{source}: 'points' must be a non-empty list")
    coords = []
    for k, p in enumerate(pts):
        if not (isinstance(p, list) and len(p) == 2):
            raise ParseError(f"{source}: points[{k}] must be a pair [x, y]")
        for axis, v in enumerate(p):
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ParseError(f"{source}: points[{k}][{axis}] is not a number: {v!r}")
            if not math.isfinite(v):
                raise NonFiniteCoordinate(f"{source}: points[{k}][{axis}] is not finite")
        coords.append((float(p[0]), float(p[1])))
    ident = doc.get("id")
    if ident is not None and not isinstance(ident, str):
        raise ParseError(f"{source}: 'id' must be a string")
    try:
        return Instance(tuple(coords), ident)
    except DuplicatePoints as exc:
        raise DuplicatePoints(f"{source}: {exc}") from None


def load_instance(path) -> Instance:
    text = Path(path).read_text()
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return instance_from_json(doc, str(path))


def _reject_constant(name):
    raise NonFiniteCoordinate(f"non-finite literal {name}")


def instance_to_json(inst: Instance) -> dict:
    doc = {"points": [[p.x, p.y] for p in inst.points]}
    if inst.id is not None:
        doc = {"id": inst.id, **doc}
    return doc


def dumps(doc) -> str:
    """Canonical JSON text; floats use the shortest repr that round-trips exactly."""
    return json.dumps(doc, indent=2, sort_keys=True, allow_nan=False) + "\n"


def save_instance(inst: Instance, path) -> None:
    Path(path).write_text(dumps(instance_to_json(inst)))


def _points(rng: np.random.Generator, generator: str, n: int, radius: float) -> np.ndarray:
    if generator == "uniform-square":
        return rng.random((n, 2))
    if generator == "gaussian":
        return rng.standard_normal((n, 2))
    if generator == "clustered":
        k = int(rng.integers(1, 5))
        centers = rng.random((k, 2))
        which = rng.integers(0, k, n)
        return centers[which] + 0.05 * rng.standard_normal((n, 2))
    if generator == "circle-boundary":
        # three near-equilateral directions pin the enclosing circle to the
        # generating one; the rest are free
        if n == 2:
            a = rng.uniform(0, 2 * math.pi)
            ang = np.array([a, a + math.pi])
        else:
            base = rng.uniform(0, 2 * math.pi) + np.arange(3) * 2 * math.pi / 3
            base += rng.uniform(-math.pi / 12, math.pi / 12, 3)
            ang = np.concatenate([base, rng.uniform(0, 2 * math.pi, n - 3)])
            rng.shuffle(ang)
        return radius * np.stack([np.cos(ang), np.sin(ang)], axis=1)
    raise ValueError(f"unknown generator {generator!r}")


def generate(config: RunConfig) -> Iterator[Instance]:
    """Deterministic stream of ``config.trials`` instances."""
    rng = np.random.default_rng(config.seed)
    lo, hi = config.n_range
    for k in range(config.trials):
        n = int(rng.integers(lo, hi + 1))
        while True:
            try:
                inst = Instance(
                    tuple(map(tuple, _points(rng, config.generator, n, config.circle_radius))),
                    f"{config.generator}-{config.seed}-{k}",
                )
                break
            except DuplicatePoints:
                continue
        yield inst
