"""Command-line front end.

Exit codes: 0 success, 1 certification failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import bounds
from .certify import CERTIFIERS
from .constructions import DISTRIBUTIONS, PointFileError, named_set, random_points, read_point_file
from .geometry import GeometryError, PointSet
from .metrics import spanning_ratio
from .spanners import TieBreakRule, build_graph
from .svg import render_svg

EXIT_OK = 0
EXIT_CERT_FAIL = 1
EXIT_INPUT = 2


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    """Everything that determines a run; replayable with ``conespan replay``."""

    command: str
    k: int | None = None
    set: str | None = None
    points: str | None = None
    random: str | None = None
    eps: float = 1e-6
    tie: str = TieBreakRule.LOWEST_ID.value
    graph: str = "yao"
    directed: bool = False
    table: bool = False
    jobs: int = 1
    out: str | None = None
    names: list[str] = field(default_factory=list)
    grid: float | None = None
    delta_max: float | None = None
    trials: int | None = None
    seed: int | None = None
    y6_delta: float | None = None
    witness: bool = False
    cones_at: int | None = None

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "RunConfig":
        known = set(cls.__dataclass_fields__)
        return cls(**{k: v for k, v in vars(ns).items() if k in known})

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def parse_random_spec(spec: str) -> dict:
    fields: dict = {"dist": "unit-square", "seed": 0}
    for item in spec.split(","):
        if not item.strip():
            continue
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in ("n", "seed", "dist"):
            raise InputError(f"bad --random item {item!r}; expected n=..,seed=..[,dist=..]")
        fields[key] = value.strip() if key == "dist" else int(value)
    if "n" not in fields:
        raise InputError("--random needs n=<count>")
    if fields["dist"] not in DISTRIBUTIONS:
        raise InputError(f"unknown distribution {fields['dist']!r}")
    return fields


def load_points(cfg: RunConfig) -> tuple[PointSet, str]:
    sources = [s for s in (cfg.set, cfg.points, cfg.random) if s is not None]
    if len(sources) != 1:
        raise InputError("give exactly one of --set, --points, --random")
    try:
        if cfg.set is not None:
            ns = named_set(cfg.set, epsilon=cfg.eps)
            return ns.points, ns.name
        if cfg.points is not None:
            return read_point_file(cfg.points).point_set(), cfg.points
        spec = parse_random_spec(cfg.random)
        ns = random_points(spec["n"], spec["seed"], spec["dist"])
        return ns.points, ns.name
    except (OSError, PointFileError, KeyError, ValueError) as exc:
        raise InputError(str(exc)) from None


def _graph(cfg: RunConfig, points: PointSet):
    if cfg.k is None:
        raise InputError("--k is required")
    try:
        return build_graph(points, cfg.k, kind=cfg.graph, directed=cfg.directed, tie=TieBreakRule(cfg.tie))
    except GeometryError as exc:
        raise InputError(str(exc)) from None


def cmd_build(cfg: RunConfig) -> int:
    points, name = load_points(cfg)
    g = _graph(cfg, points)
    summary = f"{name}: {g.n} vertices, {len(g.edges)} {'directed' if g.directed else 'undirected'} edges (k={cfg.k}, {cfg.graph})\n"
    if cfg.out:
        Path(cfg.out).write_text(g.to_edge_list(), encoding="utf-8")
        sys.stdout.write(summary)
    else:
        sys.stdout.write(g.to_edge_list())
        sys.stderr.write(summary)
    return EXIT_OK


def cmd_ratio(cfg: RunConfig) -> int:
    points, _ = load_points(cfg)
    g = _graph(cfg, points)
    report = spanning_ratio(g, points, "full-table" if cfg.table else "max-only", jobs=cfg.jobs)
    _emit(_dumps(report.to_json()), cfg.out)
    return EXIT_OK


def _cert_kwargs(name: str, cfg: RunConfig) -> dict:
    kw: dict = {}
    if cfg.grid is not None:
        key = {"basic-yao": None, "y5-short": "alpha_step", "fourpoints": "step",
               "alpha-beta-max": "delta_step", "cd-close": "step", "special": "step"}[name]
        if key:
            kw[key] = cfg.grid
    if cfg.delta_max is not None and name in ("cd-close", "special"):
        kw["delta_max"] = cfg.delta_max
    if name == "basic-yao":
        if cfg.trials is not None:
            kw["trials"] = cfg.trials
        if cfg.seed is not None:
            kw["seed"] = cfg.seed
    if name == "cd-close" and cfg.seed is not None:
        kw["seed"] = cfg.seed
    return kw


def cmd_certify(cfg: RunConfig) -> int:
    names = cfg.names or list(CERTIFIERS)
    unknown = [n for n in names if n not in CERTIFIERS]
    if unknown:
        raise InputError(f"unknown certifier(s) {unknown}; choose from {list(CERTIFIERS)}")
    results = []
    for name in names:
        start = time.perf_counter()
        res = CERTIFIERS[name](**_cert_kwargs(name, cfg))
        elapsed = time.perf_counter() - start
        sys.stderr.write(f"{name:16s} {'PASS' if res.passed else 'FAIL'}  max_violation={res.max_violation:.3e}  {elapsed:.2f}s\n")
        results.append(res)
    _emit(_dumps([r.to_json() for r in results]), cfg.out)
    return EXIT_OK if all(r.passed for r in results) else EXIT_CERT_FAIL


def bounds_table(k: int | None, y6_delta: float | None) -> list[tuple[str, float | str]]:
    rows: list[tuple[str, float | str]] = []
    if k is not None:
        if k < 4:
            raise InputError(f"no odd-k bound for k={k}: Y_k with k < 4 is not a constant spanner (prior work)")
        if k == 4:
            raise InputError("no odd-k bound for k=4; prior work shows Y4 is a 663-spanner")
        if k % 2 == 1:
            rows.append((f"Y{k} odd-k bound 1/(1-2sin(3theta/8))", bounds.yao_odd_upper_bound(k)))
        if k > 6:
            rows.append((f"Y{k} bound 1/(1-2sin(theta/2))", bounds.yao_general_upper_bound(k)))
        if k == 5:
            rows.append(("Y5 upper bound 2+sqrt(3)", bounds.Y5_UPPER))
            rows.append(("Y5 threshold angle arccos(sqrt(3)-1)", bounds.Y5_THRESHOLD_ANGLE))
            rows.append(("Y5 lower bound", bounds.Y5_LOWER))
            rows.append(("Theta5 range (comparison)", f"[{bounds.THETA5_RANGE[0]}, {bounds.THETA5_RANGE[1]}]"))
        if k == 6:
            rows.append(("Y6 upper bound", bounds.Y6_UPPER))
            rows.append((f"Y6 t(delta) at delta={bounds.Y6_DELTA0}", bounds.y6_bound(bounds.Y6_DELTA0)))
            rows.append(("Y6 lower bound", bounds.Y6_LOWER))
            rows.append(("Y6 previous bound (comparison)", bounds.Y6_PREVIOUS))
            rows.append(("Theta6 (comparison)", bounds.THETA6))
    if y6_delta is not None:
        try:
            lo, hi = bounds.y6_branches(y6_delta)
            rows.append((f"Y6 t(delta) at delta={y6_delta}", bounds.y6_bound(y6_delta)))
        except bounds.HypothesisError as exc:
            raise InputError(str(exc)) from None
        rows.append(("  induction branch", lo))
        rows.append(("  close-pair branch", hi))
    if not rows:
        rows = [(name, str(v) if isinstance(v, list) else v) for name, v in bounds.catalog().items()]
    return rows


def cmd_bounds(cfg: RunConfig) -> int:
    rows = bounds_table(cfg.k, cfg.y6_delta)
    width = max(len(r[0]) for r in rows)
    text = "".join(f"{name:<{width}}  {value:.6f}\n" if isinstance(value, float) else f"{name:<{width}}  {value}\n"
                   for name, value in rows)
    _emit(text, cfg.out)
    return EXIT_OK


def cmd_svg(cfg: RunConfig) -> int:
    if not cfg.out:
        raise InputError("svg needs --out")
    points, name = load_points(cfg)
    g = _graph(cfg, points)
    witness: tuple[int, ...] = ()
    if cfg.witness:
        witness = spanning_ratio(g, points).witness_path
    try:
        text = render_svg(points, g, witness=witness, cones_at=cfg.cones_at, k=cfg.k, title=name)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    Path(cfg.out).write_text(text, encoding="utf-8")
    sys.stdout.write(f"wrote {cfg.out}: {len(points)} points, {len(g.edges)} edges\n")
    return EXIT_OK


COMMANDS = {
    "build": cmd_build,
    "ratio": cmd_ratio,
    "certify": cmd_certify,
    "bounds": cmd_bounds,
    "svg": cmd_svg,
}


def _add_input(p: argparse.ArgumentParser, need_k: bool = True) -> None:
    p.add_argument("--set", choices=["y5-appendix", "y6-lb"], help="named construction")
    p.add_argument("--points", help="point file, one 'x,y' per line")
    p.add_argument("--random", help="random set, e.g. n=100,seed=1,dist=unit-disk")
    p.add_argument("--eps", type=float, default=1e-6, help="epsilon for --set y6-lb")
    p.add_argument("--k", type=int, required=need_k, help="cone count")
    p.add_argument("--tie", choices=[t.value for t in TieBreakRule], default=TieBreakRule.LOWEST_ID.value)
    p.add_argument("--graph", choices=["yao", "theta"], default="yao")
    p.add_argument("--directed", action="store_true", help="keep edge directions (diagnostics)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="conespan", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--jobs", type=int, default=1, help="worker processes")
        p.add_argument("--dump-config", help="also write the run configuration as JSON")

    p = sub.add_parser("build", help="build a spanner and write its edge list")
    _add_input(p)
    common(p)

    p = sub.add_parser("ratio", help="spanning ratio report as JSON")
    _add_input(p)
    p.add_argument("--table", action="store_true", help="include the per-pair table")
    common(p)

    p = sub.add_parser("certify", help="run the inequality certifiers")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--all", action="store_true", help="run every certifier (default)")
    g.add_argument("--name", dest="names", action="append", choices=list(CERTIFIERS), default=[])
    p.add_argument("--grid", type=float, help="grid step override")
    p.add_argument("--delta-max", type=float, help="largest delta for cd-close/special")
    p.add_argument("--trials", type=int, help="Monte-Carlo trials for basic-yao")
    p.add_argument("--seed", type=int)
    common(p)

    p = sub.add_parser("bounds", help="table of bound values")
    p.add_argument("--k", type=int)
    p.add_argument("--y6-delta", type=float)
    common(p)

    p = sub.add_parser("svg", help="render points, edges, cones and witness path")
    _add_input(p)
    p.add_argument("--witness", action="store_true", help="highlight the witness path")
    p.add_argument("--cones-at", type=int, help="draw the k cone wedges at this vertex")
    common(p)

    p = sub.add_parser("replay", help="re-run a configuration written by --dump-config")
    p.add_argument("config")
    return parser


def run_config(cfg: RunConfig) -> int:
    try:
        return COMMANDS[cfg.command](cfg)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "replay":
        try:
            data = json.loads(Path(args.config).read_text(encoding="utf-8"))
            cfg = RunConfig(**data)
        except (OSError, ValueError, TypeError) as exc:
            sys.stderr.write(f"error: cannot load config: {exc}\n")
            return EXIT_INPUT
        return run_config(cfg)
    cfg = RunConfig.from_namespace(args)
    if getattr(args, "dump_config", None):
        Path(args.dump_config).write_text(cfg.to_json(), encoding="utf-8")
    return run_config(cfg)


if __name__ == "__main__":
    sys.exit(main())
