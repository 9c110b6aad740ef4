"""Acceptance criteria, one marked group per criterion.

Run alone with ``pytest tests/test_acceptance.py``; the terminal summary ends
with one PASS/FAIL line per criterion.
"""

import functools
import itertools
import json
import math
import time

import pytest

from conespan import (
    ConeScheme,
    PointSet,
    build_directed_theta,
    build_directed_yao,
    build_graph,
    enumerate_paths_oracle,
    shortest_path_length,
    spanning_ratio,
)
from conespan import bounds, certify
from conespan.cli import main
from conespan.constructions import DISTRIBUTIONS, random_points, y5_lower_bound_points, y6_lower_bound_points
from conespan.metrics import path_weight
from conespan.spanners import Edge, GeoGraph
from oracles import collapse, theta_edges, yao_edges

Y5_APPENDIX_RATIO = 2.8766265012969177
HARNESS_SEEDS = range(500)


def harness_set(seed):
    n = (10, 50, 200)[seed % 3]
    dist = DISTRIBUTIONS[(seed // 3) % 3]
    return random_points(n, seed, dist)


@functools.lru_cache(maxsize=None)
def harness_ratios(k):
    start = time.perf_counter()
    ratios = []
    for seed in HARNESS_SEEDS:
        pts = harness_set(seed).points
        ratios.append(spanning_ratio(build_graph(pts, k), pts).ratio)
    return tuple(ratios), time.perf_counter() - start


def induced(graph, keep):
    index = {v: i for i, v in enumerate(keep)}
    edges = [Edge(index[e.source], index[e.target], e.weight, e.cone)
             for e in graph.edges if e.source in index and e.target in index]
    return GeoGraph(len(keep), tuple(edges), directed=graph.directed)


# 1 -------------------------------------------------------------------------

C1 = pytest.mark.criterion(1, "appendix Y5 regression")


@C1
def test_appendix_ratio_frozen(capsys):
    start = time.perf_counter()
    code = main(["ratio", "--set", "y5-appendix", "--k", "5"])
    elapsed = time.perf_counter() - start
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert doc["ratio"] > 2.87
    assert abs(doc["ratio"] - Y5_APPENDIX_RATIO) <= 1e-9
    assert elapsed < 1.0


@C1
def test_appendix_edges_match_bruteforce():
    pts = y5_lower_bound_points().points
    oracle = yao_edges(pts.coords(), 5)
    assert {(e.source, e.target, e.cone) for e in build_directed_yao(pts, ConeScheme(5)).edges} == oracle
    assert build_graph(pts, 5).edge_pairs() == collapse(oracle)


@C1
def test_appendix_witness_by_enumeration():
    pts = y5_lower_bound_points().points
    g = build_graph(pts, 5)
    r = spanning_ratio(g, pts)
    d_uv = math.dist(pts[r.witness_source].xy, pts[r.witness_target].xy)
    assert path_weight(g, r.witness_path) / d_uv == pytest.approx(r.ratio, rel=1e-12)
    # the witness path plus nearby vertices, padded to 8, as induced subgraphs
    path = list(r.witness_path)
    others = [v for v in range(len(pts)) if v not in path]
    for extra in itertools.islice(itertools.combinations(others[:10], 8 - len(path)), 40):
        keep = sorted(path + list(extra))
        sub = induced(g, keep)
        s, t = keep.index(r.witness_source), keep.index(r.witness_target)
        enumerated = enumerate_paths_oracle(sub, s, t)
        assert enumerated == pytest.approx(r.ratio * d_uv, rel=1e-12)
        for a in range(len(keep)):
            for b in range(a + 1, len(keep)):
                d, _ = shortest_path_length(sub, a, b)
                e = enumerate_paths_oracle(sub, a, b)
                assert (math.isinf(d) and math.isinf(e)) or d == pytest.approx(e, rel=1e-12)


# 2 -------------------------------------------------------------------------


@pytest.mark.criterion(2, "Y5 upper-bound envelope over 500 random sets")
def test_y5_envelope():
    ratios, elapsed = harness_ratios(5)
    worst = max(ratios)
    print(f"Y5 worst ratio over {len(ratios)} sets: {worst:.6f} ({elapsed:.1f}s)")
    assert len(ratios) == 500
    assert worst <= bounds.Y5_UPPER + 1e-9
    assert elapsed < 120.0


# 3 -------------------------------------------------------------------------

C3 = pytest.mark.criterion(3, "odd-k envelope")


@C3
@pytest.mark.parametrize("k", [5, 7, 9])
def test_odd_k_envelope(k):
    ratios, _ = harness_ratios(k)
    assert max(ratios) <= bounds.yao_odd_upper_bound(k) + 1e-9


@C3
@pytest.mark.parametrize("k", [7, 9])
def test_below_prior_bound(k):
    ratios, _ = harness_ratios(k)
    prior = bounds.yao_general_upper_bound(k)
    below = sum(r < prior for r in ratios)
    print(f"Y{k}: {below}/{len(ratios)} sets strictly below {prior:.4f}; worst {max(ratios):.4f}")
    assert below >= 1


# 4 -------------------------------------------------------------------------

C4 = pytest.mark.criterion(4, "Y6 envelope")


@C4
def test_y6_envelope():
    ratios, _ = harness_ratios(6)
    assert max(ratios) <= bounds.Y6_UPPER


@C4
def test_y6_bound_and_minimiser():
    assert bounds.y6_bound(0.324) < 5.8
    d0 = bounds.y6_optimal_delta()
    assert abs(d0 - 0.324) <= 5e-3


# 5 -------------------------------------------------------------------------


@pytest.mark.criterion(5, "Y6 lower-bound limit")
def test_y6_lower_bound_limit():
    ratios = []
    for eps in (1e-2, 1e-3, 1e-4, 1e-5):
        ns = y6_lower_bound_points(eps)
        ratios.append(spanning_ratio(build_graph(ns.points, 6), ns.points).ratio)
    print("Y6 construction ratios:", ratios)
    assert all(a <= b for a, b in zip(ratios, ratios[1:]))
    assert abs(ratios[-1] - 2.0) <= 1e-3


# 6 -------------------------------------------------------------------------

C6 = pytest.mark.criterion(6, "inequality certification suite")


@C6
def test_basic_yao_million_trials():
    r = certify.certify_basic_yao(trials=1_000_000)
    assert r.samples >= 1_000_000
    assert r.max_violation <= 1e-12


@C6
def test_y5_short_threshold_equality():
    r = certify.certify_y5_short()
    assert r.part("threshold-equality").max_violation <= 1e-9
    assert r.passed


@C6
def test_fourpoints_grid():
    r = certify.certify_fourpoints(step=1e-3)
    for name in ("x1-gt-x2", "x2-positive", "derivative-dominance", "cd-envelope"):
        assert r.part(name).passed, name
    assert r.passed


@C6
def test_alpha_beta_maximality():
    r = certify.certify_alpha_beta_max()
    assert r.part("maximality").max_violation <= 1e-9
    assert r.passed


@C6
def test_cd_close_closed_form():
    r = certify.certify_cd_close()
    assert r.part("uv-closed-form").max_violation <= 1e-9


@C6
def test_cd_close_derivative_negative():
    r = certify.certify_cd_close()
    part = r.part("uv-derivative-negative")
    assert part.passed, f"d|uv|/dgamma reaches {part.max_violation:.4g} at {part.notes}"


@C6
def test_special_inequalities():
    assert certify.certify_special(delta_max=math.pi / 9).passed


@C6
def test_certify_cd_close_cli(capsys):
    assert main(["certify", "--name", "cd-close", "--delta-max", "0.349"]) == 0


@C6
def test_certify_all_cli(capsys):
    start = time.perf_counter()
    code = main(["certify", "--all"])
    elapsed = time.perf_counter() - start
    docs = json.loads(capsys.readouterr().out)
    print({d["name"]: d["pass"] for d in docs}, f"{elapsed:.1f}s")
    assert elapsed < 60.0
    assert code == 0


# 7 -------------------------------------------------------------------------

C7 = pytest.mark.criterion(7, "identity spot-checks")


@C7
def test_threshold_identity():
    t = math.acos(math.sqrt(3) - 1)
    a = 1 / (1 - 2 * math.sin(t / 2))
    b = 1 / (1 - math.cos(t))
    assert abs(a - b) <= 1e-12
    assert abs(b - (2 + math.sqrt(3))) <= 1e-12


@C7
def test_odd_bound_k5_value():
    v = bounds.yao_odd_upper_bound(5)
    assert abs(v - 10.868) <= 5e-4, f"computed {v!r}"


# 8 -------------------------------------------------------------------------


@pytest.mark.criterion(8, "oracle equivalence on small sets")
def test_small_set_oracles():
    for seed in range(200):
        n = 2 + seed % 7
        k = 4 + seed % 4
        ns = random_points(n, 10_000 + seed, DISTRIBUTIONS[seed % 3])
        coords = ns.points.coords()
        scheme = ConeScheme(k)
        assert {(e.source, e.target, e.cone) for e in build_directed_yao(ns.points, scheme).edges} == yao_edges(coords, k)
        assert {(e.source, e.target, e.cone) for e in build_directed_theta(ns.points, scheme).edges} == theta_edges(coords, k)
        g = build_graph(ns.points, k)
        for s in range(n):
            for t in range(n):
                d, _ = shortest_path_length(g, s, t)
                e = enumerate_paths_oracle(g, s, t)
                assert d == e or abs(d - e) <= 1e-12 * max(abs(d), abs(e)), (seed, s, t)
