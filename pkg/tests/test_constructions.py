import hashlib
import math
from importlib import resources

import pytest

from conespan import ConeScheme, GeometryError, build_graph, cone_index, spanning_ratio
from conespan.constructions import (
    APPENDIX_SHA256,
    PointFile,
    PointFileError,
    appendix_text,
    format_point_file,
    named_set,
    parse_point_text,
    perturbation_search,
    random_points,
    read_point_file,
    write_point_file,
    y5_lower_bound_points,
    y6_lower_bound_points,
)


def test_appendix_rows():
    ns = y5_lower_bound_points()
    assert len(ns.points) == 34
    assert ns.points[0].xy == (0.0, 0.0)
    assert ns.points[1].xy == (252.0, 82.0)
    assert ns.labels[0] == "u" and ns.labels[1] == "v"
    assert ns.points[ns.label_of("w")].xy == (130.0, 230.0)
    assert ns.points[ns.label_of("z")].xy == (12.0, 193.0)
    assert ns.expected_k == 5
    assert ns.provenance["sha256"] == APPENDIX_SHA256


def test_appendix_file_checksum():
    raw = resources.files("conespan.data").joinpath("y5_appendix.txt").read_bytes()
    assert hashlib.sha256(raw).hexdigest() == APPENDIX_SHA256


def test_appendix_round_trip_is_byte_exact(tmp_path):
    text = appendix_text()
    assert format_point_file(parse_point_text(text)) == text
    out = tmp_path / "copy.txt"
    write_point_file(out, read_point_file_from_text(text, tmp_path))
    assert out.read_bytes() == text.encode("utf-8")


def read_point_file_from_text(text, tmp_path):
    src = tmp_path / "src.txt"
    src.write_text(text, encoding="utf-8")
    return read_point_file(src)


def test_point_file_errors():
    with pytest.raises(PointFileError, match="line 2"):
        parse_point_text("1,2\n3;4\n")
    with pytest.raises(PointFileError):
        parse_point_text("1,nan\n")
    with pytest.raises(PointFileError):
        parse_point_text("a,b\n")


def test_point_file_labels_and_floats():
    pf = PointFile([(0.5, -1.0), (2.0, 3.25)], labels={1: "q"})
    text = format_point_file(pf)
    assert text == "0.5,-1\n# label: q\n2,3.25\n"
    again = parse_point_text(text)
    assert again.coords == pf.coords and again.labels == {1: "q"}
    assert format_point_file(again) == text


def test_y6_memberships():
    ns = y6_lower_bound_points(1e-3)
    a, b, c, d = ns.points
    six = ConeScheme(6)
    assert cone_index(a, b, six) == 1 and cone_index(a, c, six) == 1
    assert cone_index(b, a, six) == 4 and cone_index(b, d, six) == 4
    assert math.dist(a.xy, b.xy) == pytest.approx(1.0, abs=1e-15)
    assert math.dist(a.xy, c.xy) < 1.0 and math.dist(b.xy, d.xy) < 1.0
    assert (0, 1) not in build_graph(ns.points, 6).edge_pairs()


def test_y6_ratio_at_coarse_epsilon():
    ns = y6_lower_bound_points(1e-2)
    r = spanning_ratio(build_graph(ns.points, 6), ns.points)
    assert 1.97 <= r.ratio <= 2.0
    assert (r.witness_source, r.witness_target) == (0, 1)


def test_y6_ratio_at_fine_epsilon():
    ns = y6_lower_bound_points(1e-6)
    r = spanning_ratio(build_graph(ns.points, 6), ns.points)
    assert 2.0 - 1e-3 <= r.ratio <= 2.0


@pytest.mark.parametrize("eps", [0.0, -1e-3, 0.1, 0.5])
def test_y6_degenerate(eps):
    with pytest.raises(GeometryError, match="construction degenerate"):
        y6_lower_bound_points(eps)


def test_random_points_contract():
    two = random_points(2, 1)
    assert len(two.points) == 2 and two.points[0].xy != two.points[1].xy
    assert random_points(40, 9, "clustered").points == random_points(40, 9, "clustered").points
    big = random_points(500, 7, "unit-square")
    assert all(0.0 <= p.x <= 1.0 and 0.0 <= p.y <= 1.0 for p in big.points)
    disk = random_points(300, 2, "unit-disk")
    assert all(math.hypot(p.x, p.y) <= 1.0 for p in disk.points)
    assert random_points(30, 1).points != random_points(30, 2).points


def test_random_points_rejects_bad_input():
    with pytest.raises(ValueError):
        random_points(1, 0)
    with pytest.raises(ValueError):
        random_points(5, 0, "gaussian")


def test_named_set_lookup():
    assert named_set("y5-appendix").name == "y5-appendix"
    assert named_set("y6-lb", epsilon=1e-3).provenance["epsilon"] == 1e-3
    with pytest.raises(KeyError):
        named_set("nope")


def test_search_with_no_iterations_returns_base():
    base = y6_lower_bound_points(1e-3)
    out, r = perturbation_search(base, 6, 0)
    assert out is base
    assert r == spanning_ratio(build_graph(base.points, 6), base.points).ratio


def test_search_never_lowers_the_ratio_y6():
    base = y6_lower_bound_points(1e-3)
    start = spanning_ratio(build_graph(base.points, 6), base.points).ratio
    out, r = perturbation_search(base, 6, 300, seed=3)
    assert r >= start
    assert spanning_ratio(build_graph(out.points, 6), out.points).ratio == r
    assert out.provenance["kind"] == "search"


def test_search_never_lowers_the_ratio_y5():
    base = y5_lower_bound_points()
    start = spanning_ratio(build_graph(base.points, 5), base.points).ratio
    _, r = perturbation_search(base, 5, 40, seed=3)
    assert r >= start


@pytest.mark.slow
def test_search_long_run_y5():
    base = y5_lower_bound_points()
    start = spanning_ratio(build_graph(base.points, 5), base.points).ratio
    _, r = perturbation_search(base, 5, 10_000, seed=3)
    assert r >= start
