"""Shortest paths and spanning ratios of geometric graphs."""

from __future__ import annotations

import heapq
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Literal, Sequence

from .geometry import PointSet
from .spanners import GeoGraph

Mode = Literal["max-only", "full-table"]

ORACLE_MAX_N = 10


class OracleScaleError(ValueError):
    pass


@dataclass(frozen=True)
class PairStretch:
    source: int
    target: int
    distance: float
    path_length: float
    ratio: float


@dataclass(frozen=True)
class StretchReport:
    """Worst pair of a graph and the path that realises it.

    ``ratio`` is ``math.inf`` when some pair is unreachable; the witness is then
    the first unreachable pair and ``witness_path`` is empty.
    """

    ratio: float
    witness_source: int
    witness_target: int
    witness_path: tuple[int, ...]
    pair_table: tuple[PairStretch, ...] | None = field(default=None, repr=False)

    @property
    def connected(self) -> bool:
        return math.isfinite(self.ratio)

    def to_json(self) -> dict:
        out: dict = {
            "ratio": self.ratio if self.connected else None,
            "connected": self.connected,
            "witness": {
                "source": self.witness_source,
                "target": self.witness_target,
                "path": list(self.witness_path),
            },
        }
        if self.pair_table is not None:
            out["pairs"] = [
                {
                    "source": p.source,
                    "target": p.target,
                    "distance": p.distance,
                    "path_length": p.path_length if math.isfinite(p.path_length) else None,
                    "ratio": p.ratio if math.isfinite(p.ratio) else None,
                }
                for p in self.pair_table
            ]
        return out


def dijkstra(graph: GeoGraph, source: int) -> tuple[list[float], list[int]]:
    """Single-source distances and predecessor array (``-1`` = none)."""
    dist = [math.inf] * graph.n
    pred = [-1] * graph.n
    dist[source] = 0.0
    heap = [(0.0, source)]
    adj = graph.adjacency
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist[u]:
            continue
        for v, w in adj[u]:
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                pred[v] = u
                heapq.heappush(heap, (nd, v))
    return dist, pred


def _trace(pred: Sequence[int], source: int, target: int) -> tuple[int, ...]:
    path = [target]
    while path[-1] != source:
        path.append(pred[path[-1]])
    return tuple(reversed(path))


def _check_id(graph: GeoGraph, v: int) -> None:
    if not isinstance(v, int) or not 0 <= v < graph.n:
        raise ValueError(f"invalid vertex id {v!r} for graph with {graph.n} vertices")


def shortest_path_length(graph: GeoGraph, source: int, target: int) -> tuple[float, tuple[int, ...]]:
    """Length and vertex sequence of a shortest path; ``(inf, ())`` if unreachable."""
    _check_id(graph, source)
    _check_id(graph, target)
    if source == target:
        return 0.0, (source,)
    dist, pred = dijkstra(graph, source)
    if math.isinf(dist[target]):
        return math.inf, ()
    return dist[target], _trace(pred, source, target)


def _sources_chunk(args) -> tuple:
    graph, coords, sources, full = args
    best = None  # (ratio, s, t, path)
    unreachable = None
    rows: list[PairStretch] = []
    for s in sources:
        dist, pred = dijkstra(graph, s)
        targets = range(graph.n) if graph.directed else range(s + 1, graph.n)
        sx, sy = coords[s]
        for t in targets:
            if t == s:
                continue
            tx, ty = coords[t]
            euc = math.hypot(tx - sx, ty - sy)
            r = dist[t] / euc
            if full:
                rows.append(PairStretch(s, t, euc, dist[t], r))
            if math.isinf(r):
                if unreachable is None:
                    unreachable = (s, t)
                continue
            # strict comparison keeps the lexicographically first maximiser
            if best is None or r > best[0]:
                best = (r, s, t, _trace(pred, s, t))
    return best, unreachable, rows


def spanning_ratio(
    graph: GeoGraph, points: PointSet, mode: Mode = "max-only", *, jobs: int = 1
) -> StretchReport:
    """Maximum of shortest-path length over euclidean distance across all pairs.

    Undirected graphs are scanned over unordered pairs ``s < t``; directed graphs
    over all ordered pairs.  Ties go to the lexicographically smallest pair.
    """
    if graph.n != len(points):
        raise ValueError("graph and point set sizes differ")
    if mode not in ("max-only", "full-table"):
        raise ValueError(f"unknown mode {mode!r}")
    full = mode == "full-table"
    if graph.n < 2:
        return StretchReport(1.0, 0, 0, (0,) if graph.n else (), () if full else None)
    coords = points.coords()
    sources = list(range(graph.n))
    if jobs <= 1 or graph.n < 64:
        results = [_sources_chunk((graph, coords, sources, full))]
    else:
        chunks = [sources[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sources_chunk, [(graph, coords, c, full) for c in chunks]))

    unreachable = min((u for _, u, _ in results if u is not None), default=None)
    rows = sorted((r for _, _, rs in results for r in rs), key=lambda p: (p.source, p.target)) if full else None
    if unreachable is not None:
        return StretchReport(math.inf, unreachable[0], unreachable[1], (), tuple(rows) if full else None)
    best = None
    for b, _, _ in results:
        if b is None:
            continue
        if best is None or b[0] > best[0] or (b[0] == best[0] and b[1:3] < best[1:3]):
            best = b
    assert best is not None
    ratio, s, t, path = best
    return StretchReport(ratio, s, t, path, tuple(rows) if full else None)


def path_weight(graph: GeoGraph, path: Sequence[int]) -> float:
    """Sum of edge weights along ``path``; raises if a hop is not an edge."""
    total = 0.0
    for u, v in zip(path, path[1:]):
        weights = [w for x, w in graph.adjacency[u] if x == v]
        if not weights:
            raise ValueError(f"{u}-{v} is not an edge")
        total += min(weights)
    return total


def enumerate_paths_oracle(graph: GeoGraph, source: int, target: int, max_n: int = ORACLE_MAX_N) -> float:
    """Minimum weight over all simple paths, by exhaustive depth-first enumeration.

    Deliberately independent of :func:`dijkstra`: it reads ``graph.edges``
    directly and never relaxes distances.
    """
    if max_n > ORACLE_MAX_N:
        raise OracleScaleError(f"oracle scale exceeded: max_n must be <= {ORACLE_MAX_N}")
    if graph.n > max_n:
        raise OracleScaleError(f"oracle scale exceeded: {graph.n} vertices > {max_n}")
    _check_id(graph, source)
    _check_id(graph, target)
    if source == target:
        return 0.0
    weight: dict[tuple[int, int], float] = {}
    for e in graph.edges:
        for u, v in ((e.source, e.target),) if graph.directed else ((e.source, e.target), (e.target, e.source)):
            weight[(u, v)] = min(weight.get((u, v), math.inf), e.weight)
    nbrs: dict[int, list[int]] = {}
    for u, v in sorted(weight):
        nbrs.setdefault(u, []).append(v)

    best = math.inf
    visited = {source}

    def walk(u: int, length: float) -> None:
        nonlocal best
        for v in nbrs.get(u, ()):
            if v in visited:
                continue
            total = length + weight[(u, v)]
            if v == target:
                best = min(best, total)
                continue
            visited.add(v)
            walk(v, total)
            visited.remove(v)

    walk(source, 0.0)
    return best
