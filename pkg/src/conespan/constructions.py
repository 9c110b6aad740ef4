"""Named point sets: the Y5 appendix set, the Y6 lower-bound family, random sets,
and a hill-climbing search for configurations with large spanning ratio.

Point files are UTF-8 text with one ``x,y`` pair per line.  Lines starting with
``#`` are comments; ``# label: name`` attaches a label to the next point.
Comments are kept so that a file read and written back is byte-identical when
its coordinates are in canonical form.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .geometry import ConeScheme, GeometryError, PointSet, cone_index
from .metrics import spanning_ratio
from .spanners import TieBreakRule, build_graph

APPENDIX_FILE = "y5_appendix.txt"
APPENDIX_SHA256 = "ee16c81a75cec9f7437255b4fef1b1e8fdc007a59ddadbecf66d7586caf8e42b"

DISTRIBUTIONS = ("unit-square", "unit-disk", "clustered")


class PointFileError(ValueError):
    pass


@dataclass(frozen=True)
class NamedPointSet:
    name: str
    points: PointSet
    provenance: dict
    expected_k: int | None = None
    labels: dict[int, str] = field(default_factory=dict)

    def label_of(self, name: str) -> int:
        for i, lab in self.labels.items():
            if lab == name:
                return i
        raise KeyError(name)


@dataclass
class PointFile:
    coords: list[tuple[float, float]]
    labels: dict[int, str] = field(default_factory=dict)
    # (number of points preceding the line, raw comment line without newline)
    comments: list[tuple[int, str]] = field(default_factory=list)

    def point_set(self) -> PointSet:
        return PointSet.from_coords(self.coords)


def _fmt(v: float) -> str:
    if float(v).is_integer() and abs(v) < 1e15:
        return str(int(v))
    return repr(float(v))


def parse_point_text(text: str) -> PointFile:
    coords: list[tuple[float, float]] = []
    labels: dict[int, str] = {}
    comments: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append((len(coords), raw))
            body = line[1:].strip()
            if body.startswith("label:"):
                labels[len(coords)] = body[len("label:"):].strip()
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise PointFileError(f"line {lineno}: expected 'x,y', got {raw!r}")
        try:
            x, y = float(parts[0]), float(parts[1])
        except ValueError as exc:
            raise PointFileError(f"line {lineno}: {exc}") from None
        if not (math.isfinite(x) and math.isfinite(y)):
            raise PointFileError(f"line {lineno}: non-finite coordinate")
        coords.append((x, y))
    return PointFile(coords, labels, comments)


def format_point_file(pf: PointFile) -> str:
    out: list[str] = []
    pending = list(pf.comments)
    # labels already present as comment lines are not emitted twice
    labelled = {n for n, raw in pending if raw.strip()[1:].strip().startswith("label:")}
    ci = 0
    for i, (x, y) in enumerate(pf.coords):
        while ci < len(pending) and pending[ci][0] <= i:
            out.append(pending[ci][1] + "\n")
            ci += 1
        if i in pf.labels and i not in labelled:
            out.append(f"# label: {pf.labels[i]}\n")
        out.append(f"{_fmt(x)},{_fmt(y)}\n")
    for _, raw in pending[ci:]:
        out.append(raw + "\n")
    return "".join(out)


def read_point_file(path: str | Path) -> PointFile:
    return parse_point_text(Path(path).read_text(encoding="utf-8"))


def write_point_file(path: str | Path, pf: PointFile) -> None:
    Path(path).write_text(format_point_file(pf), encoding="utf-8")


def appendix_text() -> str:
    data = resources.files("conespan.data").joinpath(APPENDIX_FILE).read_bytes()
    digest = hashlib.sha256(data).hexdigest()
    if digest != APPENDIX_SHA256:
        raise RuntimeError(f"{APPENDIX_FILE} checksum mismatch: {digest}")
    return data.decode("utf-8")


def y5_lower_bound_points() -> NamedPointSet:
    pf = parse_point_text(appendix_text())
    return NamedPointSet(
        "y5-appendix",
        pf.point_set(),
        {"kind": "appendix-table", "file": APPENDIX_FILE, "sha256": APPENDIX_SHA256},
        expected_k=5,
        labels=dict(pf.labels),
    )


def y6_lower_bound_points(epsilon: float) -> NamedPointSet:
    """Four points a, b, c, d whose Y6 forces both a-b paths through c or d.

    a = origin and |ab| = 1 with b just past the Q0/Q1 boundary of a.  c sits
    just inside Q1(a) near the far boundary, slightly closer to a than b is;
    d is the point reflection of c through the midpoint of ab, so it plays the
    same role for b.  The a-b stretch tends to 2 as epsilon -> 0.
    """
    if not 0.0 < epsilon < 0.1:
        raise GeometryError(f"construction degenerate: need 0 < epsilon < 0.1, got {epsilon!r}")
    slack = epsilon / 4.0
    b = (math.cos(math.pi / 3.0 + epsilon), math.sin(math.pi / 3.0 + epsilon))
    rc, ac = 1.0 - slack, 2.0 * math.pi / 3.0 - slack
    c = (rc * math.cos(ac), rc * math.sin(ac))
    d = (b[0] - c[0], b[1] - c[1])
    pts = PointSet.from_coords([(0.0, 0.0), b, c, d])

    six = ConeScheme(6)
    pa, pb, pc, pd = pts
    memberships = (
        cone_index(pa, pb, six) == 1,
        cone_index(pa, pc, six) == 1,
        cone_index(pb, pa, six) == 4,
        cone_index(pb, pd, six) == 4,
    )
    graph = build_graph(pts, 6)
    if not all(memberships) or (0, 1) in graph.edge_pairs():
        raise GeometryError(f"construction degenerate at epsilon={epsilon!r}")
    return NamedPointSet(
        "y6-lb",
        pts,
        {"kind": "parametric", "epsilon": epsilon},
        expected_k=6,
        labels={0: "a", 1: "b", 2: "c", 3: "d"},
    )


def _sample(rng: np.random.Generator, n: int, distribution: str, centers: np.ndarray | None) -> np.ndarray:
    if distribution == "unit-square":
        return rng.uniform(0.0, 1.0, (n, 2))
    if distribution == "unit-disk":
        r = np.sqrt(rng.uniform(0.0, 1.0, n))
        th = rng.uniform(0.0, 2.0 * math.pi, n)
        return np.column_stack([r * np.cos(th), r * np.sin(th)])
    assert centers is not None
    pick = rng.integers(0, len(centers), n)
    return centers[pick] + rng.normal(0.0, 0.03, (n, 2))


def random_points(n: int, seed: int, distribution: str = "unit-square") -> NamedPointSet:
    """Deterministic random point set; exact duplicates are rejected and redrawn."""
    if n < 2:
        raise ValueError("need at least 2 points")
    if distribution not in DISTRIBUTIONS:
        raise ValueError(f"unknown distribution {distribution!r}; choose from {DISTRIBUTIONS}")
    rng = np.random.default_rng(seed)
    centers = rng.uniform(0.1, 0.9, (1 + n // 20, 2)) if distribution == "clustered" else None
    seen: set[tuple[float, float]] = set()
    coords: list[tuple[float, float]] = []
    while len(coords) < n:
        for x, y in _sample(rng, n - len(coords), distribution, centers):
            key = (float(x), float(y))
            if key not in seen:
                seen.add(key)
                coords.append(key)
    return NamedPointSet(
        f"random-{distribution}-{n}-{seed}",
        PointSet.from_coords(coords),
        {"kind": "random", "seed": seed, "n": n, "distribution": distribution},
    )


def _ratio(points: PointSet, k: int, kind: str, tie: TieBreakRule) -> float:
    return spanning_ratio(build_graph(points, k, kind=kind, tie=tie), points).ratio


def perturbation_search(
    base: NamedPointSet,
    k: int,
    iterations: int,
    step_schedule: tuple[float, float] = (0.05, 0.002),
    seed: int = 0,
    *,
    kind: str = "yao",
    tie: TieBreakRule = TieBreakRule.LOWEST_ID,
) -> tuple[NamedPointSet, float]:
    """Hill-climb single-point moves, keeping a move only if the spanning ratio grows.

    ``step_schedule`` gives the start and end standard deviation of a move as a
    fraction of the bounding-box diagonal, decayed geometrically.
    """
    coords = np.array(base.points.coords(), dtype=float)
    best = _ratio(base.points, k, kind, tie)
    if iterations <= 0:
        return base, best
    rng = np.random.default_rng(seed)
    span = coords.max(axis=0) - coords.min(axis=0)
    diag = float(np.hypot(*span)) or 1.0
    s0, s1 = step_schedule
    accepted = 0
    for it in range(iterations):
        frac = it / max(1, iterations - 1)
        sigma = s0 * (s1 / s0) ** frac * diag
        i = int(rng.integers(0, len(coords)))
        trial = coords.copy()
        trial[i] += rng.normal(0.0, sigma, 2)
        try:
            pts = PointSet.from_coords(trial)
        except GeometryError:
            continue
        r = _ratio(pts, k, kind, tie)
        if math.isfinite(r) and r > best:
            best, coords = r, trial
            accepted += 1
    result = NamedPointSet(
        f"{base.name}-search",
        PointSet.from_coords(coords),
        {"kind": "search", "seed": seed, "iterations": iterations, "accepted": accepted, "base": base.name},
        expected_k=k,
        labels=dict(base.labels),
    )
    return result, best


def named_set(name: str, *, epsilon: float = 1e-6) -> NamedPointSet:
    if name == "y5-appendix":
        return y5_lower_bound_points()
    if name == "y6-lb":
        return y6_lower_bound_points(epsilon)
    raise KeyError(f"unknown named set {name!r}; choose 'y5-appendix' or 'y6-lb'")
