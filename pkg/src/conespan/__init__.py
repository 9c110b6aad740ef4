"""Cone-based geometric spanners (Yao and Theta graphs) and their spanning ratios."""

from .geometry import ConeScheme, GeometryError, Point, PointSet, angle_ccw, cone_index, euclidean_distance
from .metrics import StretchReport, enumerate_paths_oracle, shortest_path_length, spanning_ratio
from .spanners import (
    Edge,
    GeoGraph,
    TieBreakRule,
    build_directed_theta,
    build_directed_yao,
    build_graph,
    build_undirected_theta,
    build_undirected_yao,
)

__version__ = "0.1.0"
