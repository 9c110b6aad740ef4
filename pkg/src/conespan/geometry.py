"""Planar primitives: points, polar angles, distances and the cone partition.

All angles are radians measured counterclockwise from the positive x-axis.
Cone ``i`` of a ``k``-cone scheme covers ``[i * 2pi/k, (i + 1) * 2pi/k)`` around
its apex: lower boundary closed, upper boundary open.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

TWO_PI = 2.0 * math.pi
# largest double strictly below 2pi; keeps normalized angles inside [0, 2pi)
_BELOW_TWO_PI = math.nextafter(TWO_PI, 0.0)


class GeometryError(ValueError):
    """Raised for degenerate geometric input (coincident points, bad values)."""


@dataclass(frozen=True)
class Point:
    id: int
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise GeometryError(f"point {self.id} has non-finite coordinates")

    @property
    def xy(self) -> tuple[float, float]:
        return (self.x, self.y)


@dataclass(frozen=True)
class PointSet:
    """Ordered, immutable collection of pairwise-distinct points with ids 0..n-1."""

    points: tuple[Point, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        seen: dict[tuple[float, float], int] = {}
        for i, p in enumerate(self.points):
            if p.id != i:
                raise GeometryError(f"point ids must be contiguous from 0 (got {p.id} at position {i})")
            key = (p.x, p.y)
            if key in seen:
                raise GeometryError(f"coincident points: {seen[key]} and {i} at {key}")
            seen[key] = i

    @classmethod
    def from_coords(cls, coords: Iterable[Sequence[float]]) -> "PointSet":
        return cls(tuple(Point(i, float(x), float(y)) for i, (x, y) in enumerate(coords)))

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def coords(self) -> list[tuple[float, float]]:
        return [p.xy for p in self.points]


@dataclass(frozen=True)
class ConeScheme:
    k: int

    def __post_init__(self) -> None:
        if not isinstance(self.k, int) or self.k < 3:
            raise GeometryError(f"cone count must be an integer >= 3, got {self.k!r}")

    @property
    def theta(self) -> float:
        return TWO_PI / self.k

    def bisector(self, i: int) -> float:
        """Direction of the bisector of cone ``i``."""
        return (i + 0.5) * self.theta

    def boundaries(self, i: int) -> tuple[float, float]:
        return (i * self.theta, (i + 1) * self.theta)


def angle_ccw(apex: Point, target: Point) -> float:
    """Polar angle of ``target - apex`` in ``[0, 2pi)``."""
    dx = target.x - apex.x
    dy = target.y - apex.y
    if dx == 0.0 and dy == 0.0:
        raise GeometryError("degenerate direction: apex and target coincide")
    ang = math.atan2(dy, dx)
    if ang < 0.0:
        ang += TWO_PI
        if ang >= TWO_PI:
            ang = _BELOW_TWO_PI
    return ang


def cone_of_angle(angle: float, scheme: ConeScheme) -> int:
    i = int(angle // scheme.theta)
    # angle < 2pi but the division can still round up to k
    return min(i, scheme.k - 1)


def cone_index(apex: Point, target: Point, scheme: ConeScheme) -> int:
    return cone_of_angle(angle_ccw(apex, target), scheme)


def euclidean_distance(p: Point, q: Point) -> float:
    return math.hypot(q.x - p.x, q.y - p.y)
