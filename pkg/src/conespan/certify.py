"""Grid and Monte-Carlo certification of the inequalities behind the Y5/Y6 bounds.

Every check evaluates ``lhs - rhs`` over a parameter grid; the inequality is
satisfied where that difference is ``<= 0``.  A check passes when its worst
value is within ``tolerance`` (strictly below it for ``strict`` checks).
Composite results pass when all non-informational parts pass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .bounds import Y5_THRESHOLD_ANGLE, Y5_UPPER

PI = math.pi
SQRT3 = math.sqrt(3.0)

INEQ_TOL = 1e-9
FD_TOL = 1e-6
FD_STEP = 1e-6


@dataclass(frozen=True)
class CertResult:
    name: str
    grid: dict
    samples: int
    max_violation: float
    min_margin: float
    tolerance: float | None = None
    strict: bool = False
    informational: bool = False
    parts: tuple["CertResult", ...] = ()
    notes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        if self.parts:
            return all(p.passed for p in self.parts if not p.informational)
        if self.tolerance is None or math.isnan(self.max_violation):
            return False
        if self.strict:
            return self.max_violation < self.tolerance
        return self.max_violation <= self.tolerance

    def part(self, name: str) -> "CertResult":
        for p in self.parts:
            if p.name == name:
                return p
        raise KeyError(name)

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "grid": self.grid,
            "samples": self.samples,
            "max_violation": self.max_violation,
            "min_margin": self.min_margin,
            "pass": self.passed,
        }
        if self.tolerance is not None:
            out["tolerance"] = self.tolerance
        if self.informational:
            out["informational"] = True
        if self.notes:
            out["notes"] = self.notes
        if self.parts:
            out["parts"] = [p.to_json() for p in self.parts]
        return out


def _check(
    name: str,
    diff,
    tolerance: float,
    grid: dict,
    *,
    strict: bool = False,
    informational: bool = False,
    notes: dict | None = None,
) -> CertResult:
    # min_margin: closest approach of lhs to rhs over the grid
    d = np.asarray(diff, dtype=float).ravel()
    if d.size == 0:
        return CertResult(name, grid, 0, math.nan, math.nan, tolerance, strict, informational, notes=notes or {})
    return CertResult(
        name,
        grid,
        int(d.size),
        float(np.max(d)),
        float(np.min(np.abs(d))),
        tolerance,
        strict,
        informational,
        notes=notes or {},
    )


def _combine(name: str, grid: dict, parts: list[CertResult], notes: dict | None = None) -> CertResult:
    gating = [p for p in parts if not p.informational]
    return CertResult(
        name,
        grid,
        sum(p.samples for p in parts),
        max(p.max_violation for p in gating),
        min(p.min_margin for p in gating),
        parts=tuple(parts),
        notes=notes or {},
    )


def _central(f: Callable[[np.ndarray], np.ndarray], x: np.ndarray, h: float = FD_STEP) -> np.ndarray:
    return (f(x + h) - f(x - h)) / (2.0 * h)


def _closed_grid(lo: float, hi: float, step: float) -> np.ndarray:
    n = max(1, int(math.ceil((hi - lo) / step - 1e-9)))
    return np.linspace(lo, hi, n + 1)


# --------------------------------------------------------------------------
# |bc| <= |ab| - (1 - 2 sin(alpha/2)) |ac|


def basic_yao_slack(ab, ac, angle, alpha):
    """``|bc| - (|ab| - (1 - 2 sin(alpha/2)) |ac|)`` with a at the origin, b on the x-axis."""
    ab, ac, angle, alpha = map(np.asarray, (ab, ac, angle, alpha))
    cx, cy = ac * np.cos(angle), ac * np.sin(angle)
    bc = np.hypot(cx - ab, cy)
    return bc - (ab - (1.0 - 2.0 * np.sin(alpha / 2.0)) * ac)


def certify_basic_yao(trials: int = 1_000_000, seed: int = 0) -> CertResult:
    rng = np.random.default_rng(seed)
    alpha = rng.uniform(0.0, PI, trials)
    angle = alpha * rng.uniform(0.0, 1.0, trials) * rng.choice([-1.0, 1.0], trials)
    ab = rng.uniform(0.5, 2.0, trials)
    ac = ab * rng.uniform(0.0, 1.0, trials)
    # extremes: c = b, and |ac| = |ab| with the angle at its bound
    edge_alpha = np.array([0.0, PI / 3.0, PI / 3.0 - 1e-9, 2.0, PI - 1e-12])
    alpha = np.concatenate([alpha, edge_alpha])
    angle = np.concatenate([angle, edge_alpha])
    ab = np.concatenate([ab, np.ones_like(edge_alpha)])
    ac = np.concatenate([ac, np.ones_like(edge_alpha)])
    diff = basic_yao_slack(ab, ac, angle, alpha)
    return _check("basic-yao", diff, 1e-12, {"trials": trials, "seed": seed})


# --------------------------------------------------------------------------
# |ac| <= threshold * |ab|  implies  |ac| + lambda |bc| <= lambda |ab|


def y5_short_threshold(alpha, lam):
    return (2.0 * lam**2 * np.cos(alpha) - 2.0 * lam) / (lam**2 - 1.0)


def y5_short_slack(alpha, lam, ac, ab=1.0):
    """``|ac| + lambda |bc| - lambda |ab|`` with ``|bc|`` from the law of cosines."""
    bc = np.sqrt(np.maximum(ac**2 + ab**2 - 2.0 * ab * ac * np.cos(alpha), 0.0))
    return ac + lam * bc - lam * ab


def certify_y5_short(alpha_step: float = 1e-2, lam_max: float = 10.0, lam_count: int = 200, fractions: int = 21) -> CertResult:
    alphas = np.arange(alpha_step, PI / 2.0, alpha_step)
    lams = np.union1d(np.linspace(1.0 + 1e-3, lam_max, lam_count), [Y5_UPPER])
    A, L = np.meshgrid(alphas, lams, indexing="ij")
    valid = L > 1.0 / np.cos(A)
    skipped = int(np.count_nonzero(~valid))
    A, L = A[valid], L[valid]
    thr = y5_short_threshold(A, L)
    fr = np.linspace(0.0, 1.0, fractions)
    ac = thr[:, None] * fr[None, :]
    slack = y5_short_slack(A[:, None], L[:, None], ac)
    grid = {"alpha_step": alpha_step, "lambda_range": [float(lams[0]), float(lams[-1])], "lambda_count": int(lams.size), "fractions": fractions}
    parts = [
        _check("conclusion", slack, INEQ_TOL, grid),
        _check("threshold-equality", np.abs(slack[:, -1]), INEQ_TOL, grid),
    ]
    return _combine("y5-short", grid, parts, {"skipped": skipped})


# --------------------------------------------------------------------------
# four points a, b, c, d: gamma + delta = 3pi/5, t = 2 + sqrt(3)

_T = Y5_UPPER
FOUR_C1 = 2.0 * _T**2 / (_T**2 - 1.0)
FOUR_C2 = 1.0 / math.sin(3.0 * PI / 5.0)
FOUR_CD_BOUND = 2.0 * math.cos(Y5_THRESHOLD_ANGLE) - 1.0
FOUR_GAMMA_RANGE = (3.0 * PI / 10.0, 3.0 * PI / 5.0 - Y5_THRESHOLD_ANGLE)


def _short(angle):
    return (2.0 * _T**2 * np.cos(angle) - 2.0 * _T) / (_T**2 - 1.0)


def fourpoint_quantities(gamma) -> dict:
    g = np.asarray(gamma, dtype=float)
    d = 3.0 * PI / 5.0 - g
    s = np.sin(g + d)
    return {
        "x1": np.sin(d) / s - _short(g),
        "x2": 1.0 - np.sin(d) / s,
        "y1": np.sin(g) / s - _short(d),
        "y2": 1.0 - np.sin(g) / s,
    }


def fourpoint_derivatives(gamma) -> dict:
    g = np.asarray(gamma, dtype=float)
    c1, c2 = FOUR_C1, FOUR_C2
    r = 3.0 * PI / 5.0 - g
    return {
        "x1": -c2 * np.cos(r) + c1 * np.sin(g),
        "x2": c2 * np.cos(r),
        "y1": c2 * np.cos(g) - c1 * np.sin(r),
        "y2": -c2 * np.cos(g),
    }


def fourpoint_second_derivatives(gamma) -> dict:
    g = np.asarray(gamma, dtype=float)
    c1, c2 = FOUR_C1, FOUR_C2
    r = 3.0 * PI / 5.0 - g
    return {
        "x1": -c2 * np.sin(r) + c1 * np.cos(g),
        "x2": c2 * np.sin(r),
        "y1": -c2 * np.sin(g) + c1 * np.cos(r),
        "y2": c2 * np.sin(g),
    }


def fourpoint_cd_samples(gamma, lengths: int = 41) -> np.ndarray:
    """|cd| for c on ray(a, gamma) and d on ray(b, pi - delta) across the admissible boxes.

    a = (0, 0), b = (1, 0); ``|ac|`` and ``|bd|`` each range from their short-case
    threshold up to ``|ab|``.
    """
    g = np.asarray(gamma, dtype=float).ravel()
    d = 3.0 * PI / 5.0 - g
    f = np.linspace(0.0, 1.0, lengths)
    lo_c, lo_d = _short(g), _short(d)
    ac = lo_c[:, None] + (1.0 - lo_c)[:, None] * f[None, :]
    bd = lo_d[:, None] + (1.0 - lo_d)[:, None] * f[None, :]
    cx, cy = ac * np.cos(g)[:, None], ac * np.sin(g)[:, None]
    dx, dy = 1.0 - bd * np.cos(d)[:, None], bd * np.sin(d)[:, None]
    return np.hypot(cx[:, :, None] - dx[:, None, :], cy[:, :, None] - dy[:, None, :])


def certify_fourpoints(step: float = 1e-3, lengths: int = 41) -> CertResult:
    lo, hi = FOUR_GAMMA_RANGE
    g = _closed_grid(lo, hi, step)
    q = fourpoint_quantities(g)
    dq = fourpoint_derivatives(g)
    d2q = fourpoint_second_derivatives(g)
    grid = {"gamma": [lo, hi], "step": step}

    fd_err = []
    for key in ("x1", "x2", "y1", "y2"):
        fd_err.append(np.abs(dq[key] - _central(lambda x: fourpoint_quantities(x)[key], g)))
        fd_err.append(np.abs(d2q[key] - _central(lambda x: fourpoint_derivatives(x)[key], g)))

    dominance = np.maximum.reduce([dq["x2"], np.abs(dq["y1"]), np.abs(dq["y2"])]) - dq["x1"]
    envelope = np.maximum(q["x1"] + np.abs(q["y1"]), q["x1"] + np.abs(q["y2"])) - FOUR_CD_BOUND

    # |cd| sampling covers both orderings of gamma and delta
    g_full = _closed_grid(Y5_THRESHOLD_ANGLE, hi, max(step, 1e-2))
    cd = fourpoint_cd_samples(g_full, lengths) - FOUR_CD_BOUND

    # coarse constants c2 < 1.1, c1 > 2.1 applied at the worst endpoints
    rounded = np.array([
        -1.1 * math.sin(3 * PI / 10) + 2.1 * math.cos(3 * PI / 5 - Y5_THRESHOLD_ANGLE),
        -1.1 * math.sin(3 * PI / 5 - Y5_THRESHOLD_ANGLE) + 2.1 * math.cos(3 * PI / 10),
    ])

    parts = [
        _check("x1-gt-x2", q["x2"] - q["x1"], 0.0, grid, strict=True),
        _check("x2-positive", -q["x2"], 0.0, grid, strict=True),
        _check("derivative-dominance", dominance, INEQ_TOL, grid),
        _check("derivative-fd", np.concatenate(fd_err), FD_TOL, {**grid, "h": FD_STEP}),
        _check("second-derivatives-positive", -np.concatenate([d2q[k] for k in d2q]), 0.0, grid, strict=True),
        _check("second-derivatives-rounded", -rounded, 0.0, {"constants": {"c1": 2.1, "c2": 1.1}},
               strict=True, informational=True),
        _check("cd-envelope", envelope, INEQ_TOL, grid),
        _check("cd-sampling", cd, INEQ_TOL, {"gamma": [Y5_THRESHOLD_ANGLE, hi], "step": max(step, 1e-2), "lengths": lengths}),
    ]
    return _combine("fourpoints", grid, parts, {"c1": FOUR_C1, "c2": FOUR_C2, "cd_bound": FOUR_CD_BOUND})


# --------------------------------------------------------------------------
# t(alpha, beta) <= t(pi/3, pi/3 - delta)


def t_alpha_beta(alpha, beta):
    return np.cos(beta / 2.0) / np.cos(alpha + beta / 2.0)


def dt_dalpha(alpha, beta):
    return (np.sin(alpha) + np.sin(alpha + beta)) / (1.0 + np.cos(2.0 * alpha + beta))


def dt_dbeta(alpha, beta):
    return np.sin(alpha) / (2.0 * np.cos(alpha + beta / 2.0) ** 2)


def alpha_beta_bound(delta):
    return np.cos(PI / 6.0 - delta / 2.0) / np.sin(delta / 2.0)


def alpha_beta_region(delta: float, points: int = 201) -> tuple[np.ndarray, np.ndarray]:
    """Grid of admissible (alpha, beta) for a fixed delta.

    Admissible: both base angles keep |ac|, |bc| <= |ab|; alpha <= pi/3 since b and c
    share a cone at a; and at least one of alpha, beta is at most pi/3 - delta.
    """
    cut = PI / 3.0 - delta
    alpha = np.union1d(np.linspace(0.0, PI / 3.0, points), [cut])
    f = np.linspace(0.0, 1.0, points)
    A = np.repeat(alpha, f.size + 1)
    bmax = np.minimum(PI / 2.0 - alpha / 2.0, PI - 2 * alpha)
    B = np.concatenate([np.append(bm * f, cut) for bm in bmax])
    # |bc| < |ab| keeps alpha + beta/2 strictly below pi/2
    ok = (B <= PI / 2.0 - A / 2.0 + 1e-15) & (A + B / 2.0 < PI / 2.0) & ((A <= cut + 1e-15) | (B <= cut + 1e-15))
    return A[ok], B[ok]


def certify_alpha_beta_max(delta_step: float = 1e-2, points: int = 201) -> CertResult:
    deltas = np.arange(delta_step, PI / 3.0 - 1e-12, delta_step)
    excess, dA, dB, fd = [], [], [], []
    endpoint = []
    for delta in deltas:
        A, B = alpha_beta_region(float(delta), points)
        bound = alpha_beta_bound(delta)
        excess.append(t_alpha_beta(A, B) - bound)
        ga, gb = dt_dalpha(A, B), dt_dbeta(A, B)
        dA.append(-ga)
        dB.append(-gb)
        fa = _central(lambda x: t_alpha_beta(x, B), A)
        fb = _central(lambda x: t_alpha_beta(A, x), B)
        fd.append(np.abs(ga - fa) / np.maximum(1.0, np.abs(ga)))
        fd.append(np.abs(gb - fb) / np.maximum(1.0, np.abs(gb)))
        endpoint.append(1.0 - bound / t_alpha_beta(PI / 3.0 - delta, PI / 3.0 + delta / 2.0))
    grid = {"delta": [float(deltas[0]), float(deltas[-1])], "delta_step": delta_step, "points": points}
    parts = [
        _check("maximality", np.concatenate(excess), INEQ_TOL, grid),
        _check("dalpha-nonnegative", np.concatenate(dA), 0.0, grid),
        _check("dbeta-nonnegative", np.concatenate(dB), 0.0, grid),
        _check("partials-fd", np.concatenate(fd), FD_TOL, {**grid, "h": FD_STEP, "scale": "max(1, |closed form|)"}),
        _check("endpoint-ratio", np.array(endpoint), 0.0, grid, strict=True),
    ]
    return _combine("alpha-beta-max", grid, parts)


# --------------------------------------------------------------------------
# |cd| <= sin(2 delta) / sin(pi/6 + 2 delta) |ab|  (Y6, close neighbours)


def cd_close_bound(delta):
    return np.sin(2.0 * delta) / np.sin(PI / 6.0 + 2.0 * delta)


def uv_points(gamma, delta):
    """Top and bottom corners of the upper 2delta-cone overlap; a = 0, b = (cos g, sin g)."""
    g, d = np.asarray(gamma, dtype=float), np.asarray(delta, dtype=float)
    tn = np.tan(PI / 3.0 - 2.0 * d)
    w_u = SQRT3 * np.cos(g) + np.sin(g)
    w_v = tn * np.cos(g) + np.sin(g)
    return (w_u / (2.0 * SQRT3), w_u / 2.0), (w_v / (2.0 * tn), w_v / 2.0)


def uv_length(gamma, delta):
    (xu, yu), (xv, yv) = uv_points(gamma, delta)
    return np.hypot(xu - xv, yu - yv)


def uv_length_dgamma(gamma, delta):
    """Closed form of d|uv|/dgamma; its sign is the sign of 1/(3 tan^2(pi/3 - 2 delta)) - 1."""
    g, d = np.asarray(gamma, dtype=float), np.asarray(delta, dtype=float)
    tn = np.tan(PI / 3.0 - 2.0 * d)
    k = (SQRT3 - tn) ** 2 / 4.0
    return k * np.sin(2.0 * g) * (1.0 / (3.0 * tn**2) - 1.0) / (2.0 * uv_length(g, d))


def _ray_side(px, py, ox, oy, ang):
    # > 0 when p lies counterclockwise of the ray from o at angle ang
    return np.cos(ang) * (py - oy) - np.sin(ang) * (px - ox)


def cd_close_samples(gamma: float, delta: float, n: int, rng: np.random.Generator) -> np.ndarray:
    """Max-seeking Monte-Carlo sample of |cd| for one (gamma, delta).

    c: in the overlap of the upper 2delta-cones of Q0(a) and Q2(b), with |ac| <= |ab|.
    d: in the upper 2delta-cone of Q2(b), counterclockwise of the lower ray of the
    upper 2delta-cone of Q0(a) (this includes the strip beyond Q0(a)), |bd| <= |bc|.
    """
    bx, by = math.cos(gamma), math.sin(gamma)
    lo_a, hi_a = PI / 3.0 - 2.0 * delta, PI / 3.0
    lo_b, hi_b = 2.0 * PI / 3.0, 2.0 * PI / 3.0 + 2.0 * delta
    r = np.sqrt(rng.uniform(0.0, 1.0, n))
    th = rng.uniform(lo_a, hi_a, n)
    cx, cy = r * np.cos(th), r * np.sin(th)
    ang_b = np.mod(np.arctan2(cy - by, cx - bx), 2.0 * PI)
    keep = (ang_b >= lo_b) & (ang_b <= hi_b)
    cx, cy = cx[keep], cy[keep]
    bc = np.hypot(cx - bx, cy - by)
    m = cx.size
    rho = bc * np.sqrt(rng.uniform(0.0, 1.0, m))
    psi = rng.uniform(lo_b, hi_b, m)
    dx, dy = bx + rho * np.cos(psi), by + rho * np.sin(psi)
    keep = _ray_side(dx, dy, 0.0, 0.0, lo_a) >= 0.0
    return np.hypot(cx[keep] - dx[keep], cy[keep] - dy[keep])


def certify_cd_close(
    delta_max: float = PI / 9.0, step: float = 1e-3, sample_deltas: int = 12, samples: int = 20_000, seed: int = 0
) -> CertResult:
    n_delta = max(1, int(math.ceil(delta_max / step - 1e-9)))
    deltas = delta_max * np.arange(1, n_delta + 1) / n_delta
    G, D = [], []
    for d in deltas:
        gs = _closed_grid(0.0, float(d), step)
        G.append(gs)
        D.append(np.full_like(gs, d))
    G, D = np.concatenate(G), np.concatenate(D)
    grid = {"delta": [float(deltas[0]), float(delta_max)], "gamma": "[0, delta]", "step": step}

    closed = uv_length_dgamma(G, D)
    fd = _central(lambda x: uv_length(x, D), G)
    worst = int(np.argmax(fd))

    uv0 = uv_length(0.0, deltas)
    alt = SQRT3 / 2.0 - 1.0 / np.tan(2.0 * deltas + PI / 6.0) / 2.0
    closed_form = np.concatenate([np.abs(uv0 - cd_close_bound(deltas)), np.abs(uv0 - alt)])

    rng = np.random.default_rng(seed)
    mc = []
    mc_deltas = delta_max * np.arange(1, sample_deltas + 1) / sample_deltas
    for d in mc_deltas:
        for g in np.linspace(0.0, d, 6, endpoint=False):
            s = cd_close_samples(float(g), float(d), samples, rng)
            mc.append(s - cd_close_bound(d))
    mc_grid = {"delta": [float(mc_deltas[0]), float(delta_max)], "deltas": sample_deltas, "gammas_per_delta": 6,
               "samples": samples, "seed": seed}

    parts = [
        _check("uv-derivative-negative", fd, INEQ_TOL, {**grid, "h": FD_STEP},
               notes={"worst_gamma": float(G[worst]), "worst_delta": float(D[worst])}),
        _check("uv-derivative-fd", np.abs(closed - fd), FD_TOL, {**grid, "h": FD_STEP}),
        _check("uv-closed-form", closed_form, INEQ_TOL, grid),
        _check("cd-sampling", np.concatenate(mc), INEQ_TOL, mc_grid),
    ]
    return _combine("cd-close", grid, parts)


# --------------------------------------------------------------------------
# special situation: e in Q3(b) or f in Q5(a)

SPECIAL_A_LIMIT = 23.0 * PI / 180.0
SPECIAL_B_LIMIT = PI / 3.0


def special_condition_a(gamma):
    g = np.asarray(gamma, dtype=float)
    lhs = np.sin(PI / 3.0 + g) * math.sin(PI / 6.0) / (math.sin(PI / 3.0) * math.sin(5.0 * PI / 12.0))
    return lhs - np.sin(PI / 3.0 - g)


def special_condition_b(gamma):
    g = np.asarray(gamma, dtype=float)
    lhs = 2.0 * np.sin(PI / 3.0 - g) * math.sin(PI / 12.0) / math.sin(PI / 3.0)
    return lhs - np.sin(PI / 3.0 + g)


def certify_special(step: float = 1e-3, delta_max: float = PI / 9.0) -> CertResult:
    ga = _closed_grid(0.0, max(delta_max, SPECIAL_A_LIMIT), step)
    gb = _closed_grid(0.0, max(delta_max, SPECIAL_B_LIMIT), step)
    parts = [
        _check("condition-a", special_condition_a(ga), INEQ_TOL, {"gamma": [0.0, float(ga[-1])], "step": step}),
        _check("condition-b", special_condition_b(gb), INEQ_TOL, {"gamma": [0.0, float(gb[-1])], "step": step}),
    ]
    return _combine("special", {"delta_max": delta_max, "step": step}, parts)


CERTIFIERS: dict[str, Callable[..., CertResult]] = {
    "basic-yao": certify_basic_yao,
    "y5-short": certify_y5_short,
    "fourpoints": certify_fourpoints,
    "alpha-beta-max": certify_alpha_beta_max,
    "cd-close": certify_cd_close,
    "special": certify_special,
}


def certify_all(overrides: dict[str, dict] | None = None) -> list[CertResult]:
    overrides = overrides or {}
    return [fn(**overrides.get(name, {})) for name, fn in CERTIFIERS.items()]
