"""Yao and Theta graph construction over a :class:`PointSet`.

Both builders scan every (apex, candidate) pair once, so construction is
quadratic in the number of points.  The selection key inside a cone is

* Yao:   (euclidean distance, tie key)
* Theta: (projection onto the cone bisector, euclidean distance, tie key)

where the tie key comes from the :class:`TieBreakRule`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable

from .geometry import (
    ConeScheme,
    GeometryError,
    Point,
    PointSet,
    angle_ccw,
    cone_index,
    cone_of_angle,
    euclidean_distance,
)


class TieBreakRule(enum.Enum):
    LOWEST_ID = "lowest-id"
    SMALLEST_ANGLE_THEN_LOWEST_ID = "smallest-angle-then-lowest-id"

    def key(self, angle: float, target_id: int) -> tuple:
        if self is TieBreakRule.LOWEST_ID:
            return (target_id,)
        return (angle, target_id)


@dataclass(frozen=True)
class Edge:
    source: int
    target: int
    weight: float
    cone: int


@dataclass(frozen=True)
class GeoGraph:
    """Weighted graph over a point set; edges remember the cone that produced them.

    For undirected graphs each edge is stored once with ``source < target``;
    ``adjacency`` lists it from both endpoints.
    """

    n: int
    edges: tuple[Edge, ...]
    directed: bool
    kind: str = "yao"
    k: int | None = None
    adjacency: tuple[tuple[tuple[int, float], ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(self.edges))
        adj: list[list[tuple[int, float]]] = [[] for _ in range(self.n)]
        for e in self.edges:
            adj[e.source].append((e.target, e.weight))
            if not self.directed:
                adj[e.target].append((e.source, e.weight))
        object.__setattr__(self, "adjacency", tuple(tuple(a) for a in adj))

    def edge_pairs(self) -> set[tuple[int, int]]:
        return {(e.source, e.target) for e in self.edges}

    def out_degree(self, v: int) -> int:
        return sum(1 for e in self.edges if e.source == v)

    def to_edge_list(self) -> str:
        """Text edge list, one ``src dst weight cone`` line per edge."""
        return "".join(f"{e.source} {e.target} {e.weight!r} {e.cone}\n" for e in self.edges)


def _check_inputs(points: PointSet, scheme: ConeScheme) -> None:
    if not isinstance(points, PointSet):
        # PointSet validates distinctness on construction
        raise GeometryError("expected a PointSet")
    if scheme.k < 3:
        raise GeometryError("cone count must be >= 3")


def _build_directed(
    points: PointSet,
    scheme: ConeScheme,
    tie: TieBreakRule,
    kind: str,
    primary: Callable[[Point, Point, float, float, int], tuple],
) -> GeoGraph:
    _check_inputs(points, scheme)
    edges: list[Edge] = []
    for a in points:
        best: list[tuple | None] = [None] * scheme.k
        for b in points:
            if b.id == a.id:
                continue
            ang = angle_ccw(a, b)
            i = cone_of_angle(ang, scheme)
            dist = euclidean_distance(a, b)
            key = primary(a, b, ang, dist, i) + tie.key(ang, b.id)
            cur = best[i]
            if cur is None or key < cur[0]:
                best[i] = (key, b.id, dist)
        for i, entry in enumerate(best):
            if entry is not None:
                edges.append(Edge(a.id, entry[1], entry[2], i))
    return GeoGraph(len(points), tuple(edges), directed=True, kind=kind, k=scheme.k)


def build_directed_yao(
    points: PointSet, scheme: ConeScheme, tie: TieBreakRule = TieBreakRule.LOWEST_ID
) -> GeoGraph:
    return _build_directed(points, scheme, tie, "yao", lambda a, b, ang, dist, i: (dist,))


def build_directed_theta(
    points: PointSet, scheme: ConeScheme, tie: TieBreakRule = TieBreakRule.LOWEST_ID
) -> GeoGraph:
    def projection(a: Point, b: Point, ang: float, dist: float, i: int) -> tuple:
        bis = scheme.bisector(i)
        proj = (b.x - a.x) * math.cos(bis) + (b.y - a.y) * math.sin(bis)
        return (proj, dist)

    return _build_directed(points, scheme, tie, "theta", projection)


def undirected(graph: GeoGraph, points: PointSet) -> GeoGraph:
    """Underlying undirected graph; antiparallel edges collapse into one."""
    if not graph.directed:
        return graph
    scheme = ConeScheme(graph.k) if graph.k is not None else None
    seen: set[tuple[int, int]] = set()
    edges: list[Edge] = []
    for e in graph.edges:
        u, v = (e.source, e.target) if e.source < e.target else (e.target, e.source)
        if (u, v) in seen:
            continue
        seen.add((u, v))
        cone = e.cone if u == e.source or scheme is None else cone_index(points[u], points[v], scheme)
        edges.append(Edge(u, v, e.weight, cone))
    edges.sort(key=lambda e: (e.source, e.target))
    return GeoGraph(graph.n, tuple(edges), directed=False, kind=graph.kind, k=graph.k)


def build_undirected_yao(
    points: PointSet, scheme: ConeScheme, tie: TieBreakRule = TieBreakRule.LOWEST_ID
) -> GeoGraph:
    return undirected(build_directed_yao(points, scheme, tie), points)


def build_undirected_theta(
    points: PointSet, scheme: ConeScheme, tie: TieBreakRule = TieBreakRule.LOWEST_ID
) -> GeoGraph:
    return undirected(build_directed_theta(points, scheme, tie), points)


def build_graph(
    points: PointSet,
    k: int,
    *,
    kind: str = "yao",
    directed: bool = False,
    tie: TieBreakRule = TieBreakRule.LOWEST_ID,
) -> GeoGraph:
    scheme = ConeScheme(k)
    if kind == "yao":
        g = build_directed_yao(points, scheme, tie)
    elif kind == "theta":
        g = build_directed_theta(points, scheme, tie)
    else:
        raise ValueError(f"unknown graph kind {kind!r}")
    return g if directed else undirected(g, points)
